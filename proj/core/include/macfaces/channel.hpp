#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "macfaces/subset.hpp"

namespace macfaces {

// A discrete memoryless multiple-access channel together with one fixed
// independent input distribution per user.  The transition matrix has one row
// per joint input letter (x_1, ..., x_M), rows ordered with x_1 as the
// slowest-varying index and x_M as the fastest, and one column per output
// letter.
struct ChannelSpec {
  int users = 0;
  std::vector<int> input_sizes;               // |X_i| for each user
  int output_size = 0;                        // |Y|
  std::vector<std::vector<double>> input_pmfs;  // input_pmfs[i][x] = P(X_{i+1}=x)
  std::vector<std::vector<double>> transition;  // transition[row][y] = W(y | x)
};

// Tolerance applied to distribution normalization checks (pmf sums, row sums,
// joint total mass).
inline constexpr double kPmfTol = 1e-12;

// Throws ValidationError naming the offending field if the spec is not a
// well-formed channel: consistent dimensions, entries in [0,1], pmfs and
// transition rows normalized to within kPmfTol.
void validate(const ChannelSpec& spec);

// Number of joint input letters, i.e. the product of the input sizes.
std::size_t input_rows(const ChannelSpec& spec);

// The joint distribution P(x_1, ..., x_M, y) induced by the per-user pmfs and
// the transition matrix.  Stored flat: p[row * output_size + y] where `row`
// uses the same mixed-radix order as ChannelSpec::transition.
struct JointTable {
  std::vector<int> input_sizes;
  int output_size = 0;
  std::vector<double> p;

  double at(std::size_t row, int y) const {
    return p[row * static_cast<std::size_t>(output_size) +
             static_cast<std::size_t>(y)];
  }
  double total() const;
};

JointTable joint_distribution(const ChannelSpec& spec);

// Conditional mutual information cache.  Every quantity this library needs is
// a difference H(Y|X_A) - H(Y|X_{A∪S}) of conditional output entropies, so
// the cache stores one entropy per subset of users.  For channels with at
// most kPrecomputeUsers users the constructor fills the whole table up front
// (2^M entries); beyond that entries are computed on first use under a mutex.
//
// All entropies and mutual informations are in bits.
class MICache {
public:
  static constexpr int kPrecomputeUsers = 8;

  // Validates the spec (throws ValidationError if malformed).
  explicit MICache(const ChannelSpec& spec);

  int users() const { return spec_.users; }
  const ChannelSpec& spec() const { return spec_; }

  // I(X_S; Y | X_A) for disjoint S and A.  S may be empty (the result is
  // exactly zero).  Throws PreconditionError if S and A overlap.  Values in
  // [-1e-9, 0) from roundoff are clamped to zero; anything more negative
  // throws InternalError.
  double mi(UserSet s, UserSet a) const;

  // H(Y | X_C), the conditional entropy of the output given the inputs in C.
  double cond_output_entropy(UserSet c) const;

private:
  double compute_entropy(UserSet c) const;

  ChannelSpec spec_;
  std::vector<double> row_prob_;  // P(x) = prod_i p_i(x_i) per transition row
  mutable std::vector<double> entropy_;     // indexed by subset mask
  mutable std::vector<bool> have_entropy_;  // only consulted in lazy mode
  bool precomputed_ = false;
  mutable std::mutex mutex_;
};

// One-shot convenience wrapper; builds a temporary cache.  Use an MICache
// directly when evaluating more than a handful of values on one channel.
double mutual_info(const ChannelSpec& spec, UserSet s, UserSet a);

}  // namespace macfaces
