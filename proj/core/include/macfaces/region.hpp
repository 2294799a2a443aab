#pragma once

#include <memory>
#include <string>
#include <vector>

#include "macfaces/channel.hpp"
#include "macfaces/subset.hpp"

namespace macfaces {

// The rate region of an M-user channel is the polytope
//
//   { R in R^M : R_i >= 0 for all i,  sum_{i in S} R_i <= I(X_S; Y | X_{S^c})
//                                      for all nonempty S subset {1..M} }.
//
// "Back" constraints are the nonnegativity bounds R_i >= 0; "front"
// constraints are the per-subset sum-rate bounds.
enum class ConstraintKind { kBack, kFront };

struct Constraint {
  ConstraintKind kind = ConstraintKind::kBack;
  UserSet subset;      // {i} for a back constraint, S for a front constraint
  double bound = 0.0;  // 0 for back constraints, I(X_S;Y|X_{S^c}) for front

  // Signed slack bound - <normal, R>: negative means violated.  For a back
  // constraint the normal is -e_i (the constraint is -R_i <= 0), so the slack
  // is simply R_i.
  double slack(std::span<const double> rates) const {
    if (kind == ConstraintKind::kBack)
      return rates[static_cast<std::size_t>(subset.min_element() - 1)];
    return bound - rate_sum(rates, subset);
  }

  // "R_3 >= 0" or "R({1,3}) <= 1.100884".
  std::string to_string() const;
};

// Halfspace representation of the rate region.  Constraint order is fixed:
// the M back constraints first (by user index), then the 2^M - 1 front
// constraints in ascending mask order of S.  front(s) indexes into that
// layout directly.
struct HRep {
  int users = 0;
  std::vector<Constraint> constraints;
  std::shared_ptr<const MICache> mi;

  std::size_t size() const { return constraints.size(); }
  const Constraint& back(int user) const {
    return constraints[static_cast<std::size_t>(user - 1)];
  }
  const Constraint& front(UserSet s) const {
    return constraints[static_cast<std::size_t>(users) + s.bits() - 1];
  }
  double front_bound(UserSet s) const { return front(s).bound; }
};

HRep build_hrep(std::shared_ptr<const MICache> mi);
HRep build_hrep(const ChannelSpec& spec);

// Default strictness margin for the non-degeneracy test.
inline constexpr double kDegeneracyMargin = 1e-9;

// One failed strictness requirement.  Condition 1 requires I(X_S;Y) > 0 for
// every nonempty S (sets a and b unused).  Condition 2 requires
// I(X_S;Y|X_A) < I(X_S;Y|X_B) for every nonempty proper S and every A
// strictly inside B, with B disjoint from S; mi_a and mi_b are the two sides.
struct DegeneracyViolation {
  int condition = 0;  // 1 or 2
  UserSet s, a, b;
  double mi_a = 0.0, mi_b = 0.0;

  std::string describe() const;
};

struct DegeneracyReport {
  int users = 0;
  double margin = kDegeneracyMargin;
  std::vector<DegeneracyViolation> violations;

  bool nondegenerate() const { return violations.empty(); }
};

// Checks both strictness conditions exhaustively.  A channel passes only if
// every required inequality holds by more than `margin`.
DegeneracyReport check_degeneracy(const MICache& mi,
                                  double margin = kDegeneracyMargin);
DegeneracyReport check_degeneracy(const ChannelSpec& spec,
                                  double margin = kDegeneracyMargin);

// Throws DegenerateRegionError describing the first violation if the channel
// fails check_degeneracy.  Face-structure operations call this before doing
// anything order- or label-related, because their correctness leans on the
// strict inequalities.
void require_nondegenerate(const MICache& mi,
                           double margin = kDegeneracyMargin);

}  // namespace macfaces
