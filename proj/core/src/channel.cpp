#include "macfaces/channel.hpp"

#include <cmath>
#include <string>

#include "macfaces/errors.hpp"

namespace macfaces {
namespace {

// Keeps the joint table and the entropy cache within a sane memory budget;
// this bounds (#input rows) * (#output letters).
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 26;

void check_prob(double p, const std::string& field) {
  if (!std::isfinite(p) || p < -kPmfTol || p > 1.0 + kPmfTol)
    throw ValidationError(field + ": entry " + std::to_string(p) +
                          " outside [0, 1]");
}

void check_sum(double sum, const std::string& field) {
  if (std::abs(sum - 1.0) > kPmfTol)
    throw ValidationError(field + ": sums to " + std::to_string(sum) +
                          ", expected 1 within 1e-12");
}

double xlogx(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

void validate(const ChannelSpec& spec) {
  if (spec.users < 1 || spec.users > kMaxUsers)
    throw ValidationError("users: must be between 1 and " +
                          std::to_string(kMaxUsers) + ", got " +
                          std::to_string(spec.users));
  const auto m = static_cast<std::size_t>(spec.users);
  if (spec.input_sizes.size() != m)
    throw ValidationError("input_sizes: expected " + std::to_string(m) +
                          " entries, got " +
                          std::to_string(spec.input_sizes.size()));
  std::size_t rows = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (spec.input_sizes[i] < 1)
      throw ValidationError("input_sizes[" + std::to_string(i) +
                            "]: must be >= 1");
    rows *= static_cast<std::size_t>(spec.input_sizes[i]);
    if (rows > kMaxTableEntries)
      throw ValidationError("input_sizes: joint alphabet too large");
  }
  if (spec.output_size < 1) throw ValidationError("output_size: must be >= 1");
  if (rows * static_cast<std::size_t>(spec.output_size) > kMaxTableEntries)
    throw ValidationError("transition: table too large");

  if (spec.input_pmfs.size() != m)
    throw ValidationError("input_pmfs: expected " + std::to_string(m) +
                          " pmfs, got " +
                          std::to_string(spec.input_pmfs.size()));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& pmf = spec.input_pmfs[i];
    const std::string field = "input_pmfs[" + std::to_string(i) + "]";
    if (pmf.size() != static_cast<std::size_t>(spec.input_sizes[i]))
      throw ValidationError(field + ": expected " +
                            std::to_string(spec.input_sizes[i]) +
                            " entries, got " + std::to_string(pmf.size()));
    double sum = 0.0;
    for (double p : pmf) {
      check_prob(p, field);
      sum += p;
    }
    check_sum(sum, field);
  }

  if (spec.transition.size() != rows)
    throw ValidationError("transition: expected " + std::to_string(rows) +
                          " rows, got " +
                          std::to_string(spec.transition.size()));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = spec.transition[r];
    const std::string field = "transition[" + std::to_string(r) + "]";
    if (row.size() != static_cast<std::size_t>(spec.output_size))
      throw ValidationError(field + ": expected " +
                            std::to_string(spec.output_size) +
                            " entries, got " + std::to_string(row.size()));
    double sum = 0.0;
    for (double p : row) {
      check_prob(p, field);
      sum += p;
    }
    check_sum(sum, field);
  }
}

std::size_t input_rows(const ChannelSpec& spec) {
  std::size_t rows = 1;
  for (int n : spec.input_sizes) rows *= static_cast<std::size_t>(n);
  return rows;
}

double JointTable::total() const {
  double t = 0.0;
  for (double v : p) t += v;
  return t;
}

JointTable joint_distribution(const ChannelSpec& spec) {
  validate(spec);
  const std::size_t rows = input_rows(spec);
  const auto ny = static_cast<std::size_t>(spec.output_size);
  JointTable joint;
  joint.input_sizes = spec.input_sizes;
  joint.output_size = spec.output_size;
  joint.p.assign(rows * ny, 0.0);

  // Walk rows in the same mixed-radix order as the transition matrix,
  // maintaining the per-user digits incrementally (x_M fastest).
  std::vector<int> digits(static_cast<std::size_t>(spec.users), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    double px = 1.0;
    for (int i = 0; i < spec.users; ++i)
      px *= spec.input_pmfs[static_cast<std::size_t>(i)]
                           [static_cast<std::size_t>(digits[
                               static_cast<std::size_t>(i)])];
    for (std::size_t y = 0; y < ny; ++y)
      joint.p[r * ny + y] = px * spec.transition[r][y];
    for (int i = spec.users - 1; i >= 0; --i) {
      auto& d = digits[static_cast<std::size_t>(i)];
      if (++d < spec.input_sizes[static_cast<std::size_t>(i)]) break;
      d = 0;
    }
  }

  const double total = joint.total();
  if (std::abs(total - 1.0) > kPmfTol)
    throw InternalError("joint distribution total mass " +
                        std::to_string(total) + " drifted from 1");
  return joint;
}

MICache::MICache(const ChannelSpec& spec) : spec_(spec) {
  validate(spec_);
  const std::size_t rows = input_rows(spec_);

  // P(x) per transition row, reused by every entropy computation.
  row_prob_.assign(rows, 1.0);
  std::vector<int> digits(static_cast<std::size_t>(spec_.users), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    double px = 1.0;
    for (int i = 0; i < spec_.users; ++i)
      px *= spec_.input_pmfs[static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(digits[
                                static_cast<std::size_t>(i)])];
    row_prob_[r] = px;
    for (int i = spec_.users - 1; i >= 0; --i) {
      auto& d = digits[static_cast<std::size_t>(i)];
      if (++d < spec_.input_sizes[static_cast<std::size_t>(i)]) break;
      d = 0;
    }
  }

  const std::size_t subsets = std::size_t{1} << spec_.users;
  entropy_.assign(subsets, 0.0);
  if (spec_.users <= kPrecomputeUsers) {
    for (std::size_t c = 0; c < subsets; ++c)
      entropy_[c] = compute_entropy(UserSet(static_cast<Mask>(c)));
    precomputed_ = true;
  } else {
    have_entropy_.assign(subsets, false);
  }
}

double MICache::compute_entropy(UserSet c) const {
  // H(Y | X_C) = H(X_C, Y) - H(X_C), with both joints accumulated in one
  // pass over the transition rows.  The index of x_C is mixed-radix over the
  // members of C in ascending user order.
  const std::size_t rows = input_rows(spec_);
  const auto ny = static_cast<std::size_t>(spec_.output_size);
  std::size_t c_states = 1;
  for (int u : c.elements())
    c_states *= static_cast<std::size_t>(
        spec_.input_sizes[static_cast<std::size_t>(u - 1)]);

  std::vector<double> joint(c_states * ny, 0.0);
  std::vector<int> digits(static_cast<std::size_t>(spec_.users), 0);
  const auto members = c.elements();
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t idx = 0;
    for (int u : members) {
      const auto i = static_cast<std::size_t>(u - 1);
      idx = idx * static_cast<std::size_t>(spec_.input_sizes[i]) +
            static_cast<std::size_t>(digits[i]);
    }
    const double px = row_prob_[r];
    if (px > 0.0) {
      const auto& w = spec_.transition[r];
      for (std::size_t y = 0; y < ny; ++y)
        joint[idx * ny + y] += px * w[y];
    }
    for (int i = spec_.users - 1; i >= 0; --i) {
      auto& d = digits[static_cast<std::size_t>(i)];
      if (++d < spec_.input_sizes[static_cast<std::size_t>(i)]) break;
      d = 0;
    }
  }

  double h_joint = 0.0, h_marginal = 0.0;
  for (std::size_t i = 0; i < c_states; ++i) {
    double marg = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      const double v = joint[i * ny + y];
      h_joint -= xlogx(v);
      marg += v;
    }
    h_marginal -= xlogx(marg);
  }
  return h_joint - h_marginal;
}

double MICache::cond_output_entropy(UserSet c) const {
  const auto idx = static_cast<std::size_t>(c.bits());
  if (precomputed_) return entropy_[idx];
  std::lock_guard<std::mutex> lock(mutex_);
  if (!have_entropy_[idx]) {
    entropy_[idx] = compute_entropy(c);
    have_entropy_[idx] = true;
  }
  return entropy_[idx];
}

double MICache::mi(UserSet s, UserSet a) const {
  if (s.intersects(a))
    throw PreconditionError("mutual_info: S " + s.to_string() + " and A " +
                            a.to_string() + " must be disjoint");
  const UserSet all = UserSet::full(spec_.users);
  if (!s.subset_of(all) || !a.subset_of(all))
    throw PreconditionError("mutual_info: sets must lie within {1.." +
                            std::to_string(spec_.users) + "}");
  if (s.empty()) return 0.0;
  const double v = cond_output_entropy(a) - cond_output_entropy(s | a);
  if (v < 0.0) {
    if (v < -1e-9)
      throw InternalError("mutual information I(X_" + s.to_string() +
                          ";Y|X_" + a.to_string() + ") computed as " +
                          std::to_string(v) + " < 0");
    return 0.0;
  }
  return v;
}

double mutual_info(const ChannelSpec& spec, UserSet s, UserSet a) {
  return MICache(spec).mi(s, a);
}

}  // namespace macfaces
