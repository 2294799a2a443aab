#include "macfaces/counting.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "macfaces/errors.hpp"

namespace macfaces::counting {
namespace {

using boost::multiprecision::pow;

// Ordered-partition count with the boundary conventions the face formulas
// rely on.  nd(i, d) counts the d-dimensional faces of the dominant face of
// an i-user region; outside the usual range 0 <= d < i the values are fixed
// so that the face sums telescope correctly:
//   nd(i, i)     = 0   (the dominant face has no i-dimensional part)
//   nd(i, i - 1) = 1   (the dominant face itself; in particular nd(0, -1) = 1,
//                       which makes the silenced-everyone term count the
//                       origin exactly once)
//   nd(i, -1)    = 0   (otherwise, nothing below dimension zero)
// The rule order matters: d == i - 1 must win over d == -1 when i == 0.
BigInt nd(int i, int d) {
  if (d == i) return 0;
  if (d == i - 1) return 1;
  if (d == -1) return 0;
  const int groups = i - d;  // number of decoding groups, 2 <= groups <= i+1
  BigInt acc = 0;
  for (int j = 1; j <= groups; ++j) {
    const BigInt term = binomial(groups, j) * pow(BigInt(j), unsigned(i));
    if ((groups - j) % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

BigInt nf(int i, int d) { return nd(i, d) + nd(i, d - 1); }

// The fully expanded alternating sum for the total count: the two
// ordered-partition sums inside nf recombine via Pascal's rule into a single
// sum with C(i - d, j - 1) coefficients.  Kept separate from nf/nd on
// purpose so count_total can compare two genuinely different evaluations.
BigInt expanded_bracket(int i, int d) {
  BigInt acc = 0;
  for (int j = 1; j <= i - d + 1; ++j) {
    const BigInt term = binomial(i - d, j - 1) * pow(BigInt(j), unsigned(i));
    if ((i - d + 1 - j) % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

void check_users(int users, const char* op) {
  if (users < 1)
    throw PreconditionError(std::string(op) + ": users must be >= 1");
  if (users > kMaxCountUsers)
    throw CapacityError(std::string(op) + ": capped at " +
                        std::to_string(kMaxCountUsers) + " users");
}

void check_dim(int users, int dim, int max_dim, const char* op) {
  if (dim < 0 || dim > max_dim)
    throw PreconditionError(std::string(op) + ": dim must be in [0, " +
                            std::to_string(max_dim) + "] for " +
                            std::to_string(users) + " users");
}

}  // namespace

BigInt factorial(int n) {
  if (n < 0) throw PreconditionError("factorial: negative argument");
  BigInt acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;  // exact: a product of i consecutive integers divides by i!
  }
  return acc;
}

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw PreconditionError("stirling2: need 0 <= k <= n, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  // Triangle recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1); deliberately not
  // the alternating sum, so the two agree only if both are right.
  std::vector<BigInt> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j)
      row[static_cast<std::size_t>(j)] =
          BigInt(j) * row[static_cast<std::size_t>(j)] +
          row[static_cast<std::size_t>(j) - 1];
    row[0] = 0;  // S(i, 0) = 0 from here on
  }
  return row[static_cast<std::size_t>(k)];
}

BigInt count_dominant(int users, int dim) {
  check_users(users, "count_dominant");
  check_dim(users, dim, users - 1, "count_dominant");
  const BigInt via_sum = nd(users, dim);
  const BigInt via_stirling =
      factorial(users - dim) * stirling2(users, users - dim);
  if (via_sum != via_stirling)
    throw InternalError("count_dominant(" + std::to_string(users) + ", " +
                        std::to_string(dim) + "): alternating sum gives " +
                        via_sum.str() + " but (M-D)! * S(M, M-D) gives " +
                        via_stirling.str());
  return via_sum;
}

BigInt count_front(int users, int dim) {
  check_users(users, "count_front");
  check_dim(users, dim, users, "count_front");
  return nf(users, dim);
}

BigInt count_back(int users, int dim) {
  check_users(users, "count_back");
  check_dim(users, dim, users, "count_back");
  BigInt acc = 0;
  for (int i = dim; i <= users - 1; ++i)
    acc += binomial(users, i) * nf(i, dim);
  return acc;
}

BigInt count_total(int users, int dim) {
  check_users(users, "count_total");
  check_dim(users, dim, users, "count_total");
  BigInt expanded = 0, recombined = 0;
  for (int i = dim; i <= users; ++i) {
    const BigInt c = binomial(users, i);
    expanded += c * expanded_bracket(i, dim);
    recombined += c * nf(i, dim);
  }
  if (expanded != recombined)
    throw InternalError("count_total(" + std::to_string(users) + ", " +
                        std::to_string(dim) +
                        "): expanded alternating sum gives " + expanded.str() +
                        " but the per-subset recombination gives " +
                        recombined.str());
  return expanded;
}

BigInt count_vertices(int users) {
  check_users(users, "count_vertices");
  // sum_{i=0}^{M} M!/i!, accumulated as 1 + M + M(M-1) + ... exactly.
  BigInt acc = 1, term = 1;
  for (int k = users; k >= 1; --k) {
    term *= k;
    acc += term;
  }
  if (acc != count_total(users, 0))
    throw InternalError("count_vertices(" + std::to_string(users) +
                        "): series gives " + acc.str() +
                        " but count_total(M, 0) gives " +
                        count_total(users, 0).str());
  return acc;
}

BigInt count_edges(int users) {
  check_users(users, "count_edges");
  const BigInt doubled = BigInt(users) * count_vertices(users);
  if (doubled % 2 != 0)
    throw InternalError("count_edges(" + std::to_string(users) +
                        "): M * N(M,0) = " + doubled.str() + " is odd");
  const BigInt edges = doubled / 2;
  if (edges != count_total(users, 1))
    throw InternalError("count_edges(" + std::to_string(users) +
                        "): M * N(M,0) / 2 = " + edges.str() +
                        " but count_total(M, 1) = " +
                        count_total(users, 1).str());
  return edges;
}

FacetCounts facet_counts(int users) {
  check_users(users, "facet_counts");
  FacetCounts counts;
  counts.region = BigInt(users) + (BigInt(1) << users) - 1;
  counts.dominant = (BigInt(1) << users) - 2;  // 0 when M = 1: a point
  if (counts.region != count_total(users, users - 1))
    throw InternalError("facet_counts: M + 2^M - 1 = " + counts.region.str() +
                        " but count_total(M, M-1) = " +
                        count_total(users, users - 1).str());
  if (counts.dominant != nd(users, users - 2))
    throw InternalError("facet_counts: 2^M - 2 = " + counts.dominant.str() +
                        " but the ordered-partition count gives " +
                        nd(users, users - 2).str());
  return counts;
}

FaceCounts face_counts(int users) {
  check_users(users, "face_counts");
  FaceCounts fc;
  fc.users = users;
  for (int d = 0; d <= users; ++d) {
    fc.total.push_back(count_total(users, d));
    fc.front.push_back(count_front(users, d));
    fc.back.push_back(count_back(users, d));
    if (d < users) fc.dominant.push_back(count_dominant(users, d));
  }
  return fc;
}

std::vector<FaceCounts> count_table(int max_users) {
  check_users(max_users, "count_table");
  std::vector<FaceCounts> table;
  table.reserve(static_cast<std::size_t>(max_users));
  for (int m = 1; m <= max_users; ++m) table.push_back(face_counts(m));
  return table;
}

namespace {

// log10 of a positive BigInt without overflowing double: digit count plus
// the log of the leading digits.
double log10_of(const BigInt& v) {
  const std::string s = v.str();
  const std::size_t lead = std::min<std::size_t>(s.size(), 15);
  const double head = std::stod(s.substr(0, lead));
  return std::log10(head) + static_cast<double>(s.size() - lead);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<FaceCounts>& table,
               bool with_log10) {
  os << "M,D,N_total,N_dominant,N_front,N_back";
  if (with_log10) os << ",log10_N_total";
  os << "\n";
  for (const FaceCounts& fc : table) {
    for (int d = 0; d <= fc.users; ++d) {
      const auto dd = static_cast<std::size_t>(d);
      const BigInt& dom = d < fc.users ? fc.dominant[dd] : BigInt(0);
      os << fc.users << "," << d << "," << fc.total[dd].str() << ","
         << dom.str() << "," << fc.front[dd].str() << ","
         << fc.back[dd].str();
      if (with_log10) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", log10_of(fc.total[dd]));
        os << "," << buf;
      }
      os << "\n";
    }
  }
}

}  // namespace macfaces::counting
