#include "macfaces/membership.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "macfaces/errors.hpp"

namespace macfaces {
namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void check_rates_arity(const HRep& hrep, std::span<const double> rates) {
  if (rates.size() != static_cast<std::size_t>(hrep.users))
    throw PreconditionError("rate vector has " +
                            std::to_string(rates.size()) +
                            " components, expected " +
                            std::to_string(hrep.users));
}

void check_label_users(const HRep& hrep, const FaceLabel& label) {
  require_valid(label);
  if (label.users != hrep.users)
    throw PreconditionError("label is over " + std::to_string(label.users) +
                            " users, region over " +
                            std::to_string(hrep.users));
}

}  // namespace

bool membership_direct(const HRep& hrep, std::span<const double> rates,
                       const FaceLabel& label, double tol) {
  check_rates_arity(hrep, rates);
  check_label_users(hrep, label);
  require_nondegenerate(*hrep.mi);
  const FaceLabel c = canonical(label);

  for (const Constraint& con : hrep.constraints)
    if (con.slack(rates) < -tol) return false;
  for (UserSet s : c.chain)
    if (std::abs(hrep.front_bound(s) - rate_sum(rates, s)) > tol) return false;
  for (int a : c.zeros.elements())
    if (std::abs(rates[static_cast<std::size_t>(a - 1)]) > tol) return false;
  return true;
}

bool membership_decomposed(const HRep& hrep, std::span<const double> rates,
                           const FaceLabel& label, double tol) {
  check_rates_arity(hrep, rates);
  check_label_users(hrep, label);
  require_nondegenerate(*hrep.mi);
  const FaceLabel c = canonical(label);
  const MICache& mi = *hrep.mi;
  const UserSet all = UserSet::full(hrep.users);

  // Silenced users contribute nothing.
  for (int a : c.zeros.elements())
    if (std::abs(rates[static_cast<std::size_t>(a - 1)]) > tol) return false;

  // The users outside the telescope must form an achievable tuple for the
  // shrunken channel in which every telescope user is noise: nonnegative
  // rates and, for each L ⊆ S_1^c, R(L) <= I(X_L; Y | X_{S_1^c \ L}).  With
  // an empty chain this is exactly the full region test.
  const UserSet outer = c.chain.empty() ? UserSet() : c.chain.front();
  const UserSet rest = all - outer;
  for (int i : rest.elements())
    if (rates[static_cast<std::size_t>(i - 1)] < -tol) return false;
  bool inside = true;
  for_each_subset(rest, [&](UserSet l) {
    if (l.empty() || !inside) return;
    if (rate_sum(rates, l) > mi.mi(l, rest - l) + tol) inside = false;
  });
  if (!inside) return false;

  // Each telescope shell U_k = S_k \ S_{k+1} is pinned: its sum rate hits
  // I(X_{U_k}; Y | X_{S_k^c}) exactly, while every proper sub-group K stays
  // under I(X_K; Y | X_{(S_{k+1} ∪ K)^c}) — the bound seen once everything
  // decoded before the shell has been stripped off and S_{k+1} is noise.
  for (std::size_t k = 0; k < c.chain.size(); ++k) {
    const UserSet sk = c.chain[k];
    const UserSet next = k + 1 < c.chain.size() ? c.chain[k + 1] : UserSet();
    const UserSet shell = sk - next;
    if (std::abs(rate_sum(rates, shell) - mi.mi(shell, all - sk)) > tol)
      return false;
    bool ok = true;
    for_each_subset(shell, [&](UserSet kset) {
      if (kset.empty() || kset == shell || !ok) return;
      if (rate_sum(rates, kset) > mi.mi(kset, all - next - kset) + tol)
        ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool membership(const HRep& hrep, std::span<const double> rates,
                const FaceLabel& label, double tol) {
  const bool direct = membership_direct(hrep, rates, label, tol);
  const bool decomposed = membership_decomposed(hrep, rates, label, tol);
  if (direct != decomposed) {
    std::string point = "(";
    for (std::size_t i = 0; i < rates.size(); ++i) {
      if (i) point += ", ";
      point += fmt6(rates[i]);
    }
    point += ")";
    throw InternalError("membership routes disagree on " + point +
                        " for " + to_string(label) + ": direct says " +
                        (direct ? "yes" : "no") + ", decomposition says " +
                        (decomposed ? "yes" : "no"));
  }
  return direct;
}

std::string NotAchievable::describe() const {
  return "not achievable: " + violated.to_string() + " violated by " +
         fmt6(excess);
}

LocateResult locate_minimal_face(const HRep& hrep,
                                 std::span<const double> rates, double tol) {
  check_rates_arity(hrep, rates);
  require_nondegenerate(*hrep.mi);

  for (const Constraint& con : hrep.constraints) {
    const double slack = con.slack(rates);
    if (slack < -tol) return NotAchievable{con, -slack};
  }

  // The point is in the region.  Its minimal face is cut out by exactly the
  // constraints it meets with equality: the tight sum-rate bounds become the
  // telescope, the zero coordinates outside it become the silenced set.
  std::vector<UserSet> chain;
  const UserSet all = UserSet::full(hrep.users);
  for (Mask s = 1; s <= all.bits(); ++s) {
    const UserSet set(s);
    if (std::abs(hrep.front_bound(set) - rate_sum(rates, set)) <= tol)
      chain.push_back(set);
  }
  std::sort(chain.begin(), chain.end(), [](UserSet a, UserSet b) {
    return a.size() > b.size();
  });
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (!chain[k].proper_subset_of(chain[k - 1]))
      throw InternalError(
          "tight sum-rate constraints do not nest (" +
          chain[k - 1].to_string() + " and " + chain[k].to_string() +
          "); the channel is too close to degenerate for this tolerance");

  UserSet zeros;
  const UserSet outer = chain.empty() ? UserSet() : chain.front();
  for (int i = 1; i <= hrep.users; ++i)
    if (std::abs(rates[static_cast<std::size_t>(i - 1)]) <= tol &&
        !outer.contains(i))
      zeros = zeros | UserSet::single(i);

  FaceLabel label{hrep.users, std::move(chain), zeros};
  if (!membership(hrep, rates, label, tol))
    throw InternalError("locate_minimal_face assembled " + to_string(label) +
                        " but the point fails its own membership test");
  return label;
}

std::vector<double> dominant_vertex(const MICache& mi,
                                    const std::vector<int>& order) {
  const int m = mi.users();
  if (order.size() != static_cast<std::size_t>(m))
    throw PreconditionError("dominant_vertex: order has " +
                            std::to_string(order.size()) +
                            " entries, expected " + std::to_string(m));
  UserSet seen;
  for (int u : order) {
    if (u < 1 || u > m || seen.contains(u))
      throw PreconditionError(
          "dominant_vertex: order is not a permutation of {1.." +
          std::to_string(m) + "}");
    seen = seen | UserSet::single(u);
  }
  require_nondegenerate(mi);

  // Peel users off in decode order: whoever decodes first sees everyone else
  // as noise; each later user conditions on all already-decoded inputs.
  std::vector<double> rates(static_cast<std::size_t>(m), 0.0);
  UserSet decoded;
  for (int u : order) {
    rates[static_cast<std::size_t>(u - 1)] = mi.mi(UserSet::single(u), decoded);
    decoded = decoded | UserSet::single(u);
  }

  const double sum = rate_sum(rates, UserSet::full(m));
  const double want = mi.mi(UserSet::full(m), UserSet());
  if (std::abs(sum - want) > kRateTol)
    throw InternalError("dominant_vertex: rates sum to " + fmt6(sum) +
                        " but the joint bound is " + fmt6(want));
  return rates;
}

}  // namespace macfaces
