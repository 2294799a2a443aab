#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "macfaces/label.hpp"
#include "macfaces/region.hpp"

namespace macfaces {

// Default tolerance for membership and tightness tests on rate tuples.
inline constexpr double kRateTol = 1e-9;

// Does R lie on the face named by `label`?  Checked the obvious way: R must
// satisfy every constraint of the H-representation (within tol) and meet the
// label's defining equalities (each chain bound tight, each zero rate zero).
//
// Requires a valid label and a rate vector of length `users`; requires the
// channel to be non-degenerate.
bool membership_direct(const HRep& hrep, std::span<const double> rates,
                       const FaceLabel& label, double tol = kRateTol);

// Same predicate via the structural decomposition instead: with chain
// S_1 ⊃ ... ⊃ S_m and zeros A, R lies on the face iff
//   - R_a = 0 for every a in A,
//   - the restriction of R to S_1^c lies in the rate region of the reduced
//     channel in which the users of S_1 are treated as noise (bounds
//     I(X_L; Y | X_{S_1^c \ L}) for L ⊆ S_1^c), and
//   - for each shell U_k = S_k \ S_{k+1} (with S_{m+1} = ∅): every proper
//     K ⊂ U_k satisfies R(K) <= I(X_K; Y | X_{(S_{k+1} ∪ K)^c}) and the full
//     shell is pinned, R(U_k) = I(X_{U_k}; Y | X_{S_k^c}).
// No inequality involving the whole polytope is evaluated; everything is
// local to the label.
bool membership_decomposed(const HRep& hrep, std::span<const double> rates,
                           const FaceLabel& label, double tol = kRateTol);

// Runs both routes and returns the shared verdict; throws InternalError if
// they disagree (they are provably equivalent on non-degenerate channels).
bool membership(const HRep& hrep, std::span<const double> rates,
                const FaceLabel& label, double tol = kRateTol);

// Result of locate_minimal_face when R is outside the region: the first
// violated constraint in H-representation order and by how much.
struct NotAchievable {
  Constraint violated;
  double excess = 0.0;  // amount by which the constraint fails, > 0

  std::string describe() const;
};

using LocateResult = std::variant<FaceLabel, NotAchievable>;

// The unique smallest face containing R: collect the tight front constraints
// (they always form a chain on a non-degenerate channel) and the zero
// coordinates outside that chain.  Returns NotAchievable when R violates any
// constraint by more than tol.  The result is checked against
// membership(label) before returning; requires non-degeneracy.
LocateResult locate_minimal_face(const HRep& hrep,
                                 std::span<const double> rates,
                                 double tol = kRateTol);

// The vertex of the dominant face at which users decode one at a time in the
// given order: order[0] is decoded first while all others are still noise, so
// R_{order[0]} = I(X_{order[0]}; Y), and each later user sees the earlier
// ones subtracted out, R_{order[k]} = I(X_{order[k]}; Y | X_{order[0..k-1]}).
// `order` must be a permutation of {1..M}; the channel must be
// non-degenerate.  The sum rate is verified to hit I(X_{1..M}; Y).
std::vector<double> dominant_vertex(const MICache& mi,
                                    const std::vector<int>& order);

}  // namespace macfaces
