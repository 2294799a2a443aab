#pragma once

#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace macfaces::counting {

// Face counts overflow every fixed-width integer quickly (the vertex count
// alone exceeds 2^64 at 21 users), and the alternating sums must be evaluated
// exactly, so everything in this module runs on arbitrary-precision integers.
using BigInt = boost::multiprecision::cpp_int;

// Largest table size the CLI will produce; counts stay exact far beyond this,
// the cap just keeps output sizes sane.
inline constexpr int kMaxCountUsers = 24;

BigInt factorial(int n);
BigInt binomial(int n, int k);

// Stirling number of the second kind: partitions of an n-set into k nonempty
// blocks.  Requires 0 <= k <= n.
BigInt stirling2(int n, int k);

// Number of D-dimensional faces of the dominant face (the face where the sum
// rate over all M users is maximal).  Equals the number of ordered partitions
// of {1..M} into M - D nonempty groups, i.e. (M-D)! * S(M, M-D).  Requires
// 0 <= D < M (the dominant face itself has dimension M-1).
BigInt count_dominant(int users, int dim);

// Number of D-dimensional faces of the region whose label has no silenced
// users (A empty).  These are the faces of the dominant face plus the faces
// one dimension up that they sit inside: N_f(M,D) = N_d(M,D) + N_d(M,D-1).
BigInt count_front(int users, int dim);

// Number of D-dimensional faces whose label silences at least one user:
// sum over the set of active users of the no-silence count of the smaller
// region, N_b(M,D) = sum_{i=D}^{M-1} C(M,i) N_f(i,D).
BigInt count_back(int users, int dim);

// Total number of D-dimensional faces, N(M,D) = N_f + N_b
//                                            = sum_{i=D}^{M} C(M,i) N_f(i,D).
// Evaluated along two independent routes (the expanded alternating-sum form
// and the recombined form above); InternalError if they ever disagree.
// Requires 0 <= D <= M.  N(M,M) = 1 (the region itself).
BigInt count_total(int users, int dim);

// Vertices of the region: N(M,0) = sum_{i=0}^{M} M!/i! = floor(e * M!).
BigInt count_vertices(int users);

// Edges of the region: N(M,1) = M * N(M,0) / 2; the division is checked to
// be exact.  Must (and does) equal count_total(users, 1).
BigInt count_edges(int users);

// Facets ((M-1)-dimensional faces).  The region has M + 2^M - 1 of them (M
// back, 2^M - 1 front); the dominant face, itself a facet, has 2^M - 2.  For
// M = 1 the dominant face is a point with no facets, so `dominant` is 0.
struct FacetCounts {
  BigInt region;
  BigInt dominant;
};
FacetCounts facet_counts(int users);

// Full per-dimension profile for one M.  Indexed by dimension 0..users for
// total/front/back; `dominant` covers 0..users-1 only (the dominant face has
// no M-dimensional part).
struct FaceCounts {
  int users = 0;
  std::vector<BigInt> total;
  std::vector<BigInt> dominant;
  std::vector<BigInt> front;
  std::vector<BigInt> back;
};
FaceCounts face_counts(int users);

// Rows for M = 1..max_users.  Capped at kMaxCountUsers.
std::vector<FaceCounts> count_table(int max_users);

// CSV with header "M,D,N_total,N_dominant,N_front,N_back", one row per (M,D)
// pair, D ascending within M.  N_dominant is 0 for D = M.  When with_log10 is
// set a trailing "log10_N_total" column carries a rounded decimal magnitude
// for eyeballing growth.
void write_csv(std::ostream& os, const std::vector<FaceCounts>& table,
               bool with_log10 = false);

}  // namespace macfaces::counting
