#include "macfaces/region.hpp"

#include <cstdio>
#include <memory>

#include "macfaces/errors.hpp"

namespace macfaces {
namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string Constraint::to_string() const {
  if (kind == ConstraintKind::kBack)
    return "R_" + std::to_string(subset.min_element()) + " >= 0";
  return "R(" + subset.to_string() + ") <= " + fmt6(bound);
}

HRep build_hrep(std::shared_ptr<const MICache> mi) {
  HRep hrep;
  hrep.users = mi->users();
  hrep.mi = std::move(mi);
  const int m = hrep.users;
  const Mask all = UserSet::full(m).bits();
  hrep.constraints.reserve(static_cast<std::size_t>(m) + (Mask{1} << m) - 1);
  for (int i = 1; i <= m; ++i)
    hrep.constraints.push_back(
        {ConstraintKind::kBack, UserSet::single(i), 0.0});
  for (Mask s = 1; s <= all; ++s) {
    const UserSet set(s);
    hrep.constraints.push_back(
        {ConstraintKind::kFront, set,
         hrep.mi->mi(set, UserSet::full(m) - set)});
  }
  return hrep;
}

HRep build_hrep(const ChannelSpec& spec) {
  return build_hrep(std::make_shared<MICache>(spec));
}

std::string DegeneracyViolation::describe() const {
  if (condition == 1)
    return "condition 1 violated: I(X_" + s.to_string() +
           ";Y) = " + fmt6(mi_a) + " (must be > 0)";
  return "condition 2 violated: I(X_" + s.to_string() + ";Y|X_" +
         a.to_string() + ") = " + fmt6(mi_a) + " vs I(X_" + s.to_string() +
         ";Y|X_" + b.to_string() + ") = " + fmt6(mi_b) +
         " (must increase strictly)";
}

DegeneracyReport check_degeneracy(const MICache& mi, double margin) {
  const int m = mi.users();
  const UserSet all = UserSet::full(m);
  DegeneracyReport report;
  report.users = m;
  report.margin = margin;

  // Condition 1: every nonempty group of users must get some information
  // through on its own, I(X_S; Y) > 0.
  for (Mask s = 1; s <= all.bits(); ++s) {
    const UserSet set(s);
    const double v = mi.mi(set, UserSet());
    if (v <= margin)
      report.violations.push_back({1, set, UserSet(), UserSet(), v, 0.0});
  }

  // Condition 2: revealing strictly more side information must strictly help,
  // I(X_S;Y|X_A) < I(X_S;Y|X_B) for A ⊂ B, both disjoint from S, S a
  // nonempty proper subset.  B ranges over nonempty subsets of S^c (which
  // keeps it a proper subset of the full set automatically), A over proper
  // subsets of B including the empty set.
  for (Mask s = 1; s < all.bits(); ++s) {
    const UserSet set(s);
    for_each_subset(all - set, [&](UserSet b) {
      if (b.empty()) return;
      const double mi_b = mi.mi(set, b);
      for_each_subset(b, [&](UserSet a) {
        if (a == b) return;
        const double mi_a = mi.mi(set, a);
        if (mi_b - mi_a <= margin)
          report.violations.push_back({2, set, a, b, mi_a, mi_b});
      });
    });
  }
  return report;
}

DegeneracyReport check_degeneracy(const ChannelSpec& spec, double margin) {
  return check_degeneracy(MICache(spec), margin);
}

void require_nondegenerate(const MICache& mi, double margin) {
  const DegeneracyReport report = check_degeneracy(mi, margin);
  if (!report.nondegenerate())
    throw DegenerateRegionError(
        "channel is degenerate, face structure undefined: " +
        report.violations.front().describe());
}

}  // namespace macfaces
