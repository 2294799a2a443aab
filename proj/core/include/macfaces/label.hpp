#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "macfaces/subset.hpp"

namespace macfaces {

// Symbolic name of one face of the rate region.  A label consists of a
// strictly nested chain S_1 ⊃ S_2 ⊃ ... ⊃ S_m of nonempty user sets (the
// "telescope") plus a set of silenced users A disjoint from S_1 (their rates
// are pinned to zero).  Every face of a non-degenerate region carries exactly
// one such label; the whole region is the label with empty chain and empty A.
//
// The face consists of the region points that meet every chain bound with
// equality — sum_{i in S_k} R_i = I(X_{S_k}; Y | X_{S_k^c}) for each k — and
// have R_a = 0 for each a in A.  Its dimension is M - m - |A|.
struct FaceLabel {
  int users = 0;
  std::vector<UserSet> chain;  // canonical form: strictly decreasing size
  UserSet zeros;               // the set A

  bool is_region() const { return chain.empty() && zeros.empty(); }

  friend bool operator==(const FaceLabel& a, const FaceLabel& b) = default;
};

struct LabelCheck {
  bool valid = false;
  std::string diagnostic;  // empty when valid
};

// Sorts the chain into canonical (decreasing-size) order.  Does not validate.
FaceLabel canonical(FaceLabel label);

// Checks that every set fits in {1..users}, chain entries are nonempty and
// strictly nested, and the zeros avoid the outermost chain set.  Returns a
// diagnostic naming the first problem rather than throwing, so callers can
// surface it to users.
LabelCheck validate_label(const FaceLabel& label);

// Throws PreconditionError with the diagnostic if the label is invalid.
void require_valid(const FaceLabel& label);

// Dimension of the face: users - chain.size() - zeros.size().  Requires a
// valid label.
int face_dim(const FaceLabel& label);

// Intersection of two faces of the same region, computed purely on labels:
// merge the chains, union the zeros, and re-validate.  Returns nullopt when
// the intersection is empty (the combined data is not a valid label).
// Requires both labels valid and on the same number of users.
std::optional<FaceLabel> merge_labels(const FaceLabel& a, const FaceLabel& b);

// Hard cap on label enumeration; the face count grows superexponentially
// (tens of millions already at 8 users).
inline constexpr int kMaxEnumerateUsers = 8;

// All faces of dimension `dim`, or of every dimension 0..users when dim is
// nullopt (grouped by ascending dimension).  Deterministic order, no
// duplicates, every label valid.  The count per dimension is checked against
// the closed-form formula before returning; a mismatch throws InternalError.
// Throws CapacityError above kMaxEnumerateUsers and PreconditionError for a
// dim outside [0, users].
std::vector<FaceLabel> enumerate_faces(int users,
                                       std::optional<int> dim = std::nullopt);

// The group-successive-decoding schedule a face label encodes.  Users in
// `skipped` are silenced and never decoded.  The remaining users are decoded
// group by group: all users of groups[0] jointly first (treating all later
// groups as noise), then groups[1], and so on; rates inside one group may
// require further time sharing but the group boundaries are fixed by the
// label.
struct DecodingPlan {
  std::vector<UserSet> groups;
  UserSet skipped;

  // "[{2},{1}]" — groups in decode order; callers append skipped separately.
  std::string to_string() const;
};

// Reads the schedule off the label: the first group is everyone outside the
// telescope and A, then each telescope shell S_k \ S_{k+1}, finishing with
// the innermost set S_m.  Empty groups are dropped.  Requires a valid label.
DecodingPlan decoding_order(const FaceLabel& label);

// Label text: "F({1,2,3}>{1,3}>{3}|{4})".  The part before '|' is the chain
// (possibly empty), the part after is the zero set (omitted when empty), so
// the whole region prints as "F(|)".
std::string to_string(const FaceLabel& label);

// Inverse of to_string.  `users` fixes the ground set (the text does not
// carry it).  Accepts any chain order and redundant whitespace, canonicalizes
// and validates; throws ValidationError on syntax errors and invalid labels.
FaceLabel parse_label(std::string_view text, int users);

// Graphviz rendering of the face lattice restricted to the given faces:
// one node per label, one edge b -> a whenever a covers b (dim(a) =
// dim(b) + 1 and merge(a, b) = b).  Pass enumerate_faces(M) for the full
// lattice.
std::string lattice_to_dot(const std::vector<FaceLabel>& faces);

}  // namespace macfaces
