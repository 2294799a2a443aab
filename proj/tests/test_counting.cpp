#include <doctest.h>

#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "macfaces/counting.hpp"
#include "macfaces/errors.hpp"

using namespace macfaces;
using counting::BigInt;

TEST_CASE("factorial, binomial, stirling basics") {
  CHECK(counting::factorial(0) == 1);
  CHECK(counting::factorial(5) == 120);
  CHECK(counting::binomial(5, 2) == 10);
  CHECK(counting::binomial(5, 0) == 1);
  CHECK(counting::binomial(5, 6) == 0);
  CHECK(counting::binomial(40, 20) == BigInt("137846528820"));

  CHECK(counting::stirling2(0, 0) == 1);
  CHECK(counting::stirling2(3, 2) == 3);
  CHECK(counting::stirling2(4, 2) == 7);
  CHECK(counting::stirling2(5, 3) == 25);
  CHECK(counting::stirling2(7, 7) == 1);
  CHECK(counting::stirling2(7, 1) == 1);
  CHECK(counting::stirling2(10, 5) == 42525);
  CHECK_THROWS_AS(counting::stirling2(3, 4), PreconditionError);
  CHECK_THROWS_AS(counting::stirling2(-1, 0), PreconditionError);
}

TEST_CASE("dominant-face counts") {
  // Four users: 24 vertices, 36 edges, 14 two-dimensional faces, then the
  // face itself.
  CHECK(counting::count_dominant(4, 0) == 24);
  CHECK(counting::count_dominant(4, 1) == 36);
  CHECK(counting::count_dominant(4, 2) == 14);
  CHECK(counting::count_dominant(4, 3) == 1);
  CHECK(counting::count_dominant(3, 0) == 6);
  CHECK(counting::count_dominant(1, 0) == 1);
  // One vertex per decode permutation.
  for (int m = 1; m <= 8; ++m)
    CHECK(counting::count_dominant(m, 0) == counting::factorial(m));
  CHECK_THROWS_AS(counting::count_dominant(3, 3), PreconditionError);
  CHECK_THROWS_AS(counting::count_dominant(3, -1), PreconditionError);
}

TEST_CASE("front, back and total counts on small regions") {
  CHECK(counting::count_front(2, 0) == 2);
  CHECK(counting::count_front(3, 0) == 6);
  CHECK(counting::count_front(3, 3) == 1);
  CHECK(counting::count_back(2, 0) == 3);
  CHECK(counting::count_back(3, 0) == 10);
  CHECK(counting::count_back(3, 3) == 0);
  CHECK(counting::count_back(1, 0) == 1);

  const BigInt want3[] = {16, 24, 10, 1};
  for (int d = 0; d <= 3; ++d)
    CHECK(counting::count_total(3, d) == want3[d]);
  const BigInt want2[] = {5, 5, 1};
  for (int d = 0; d <= 2; ++d)
    CHECK(counting::count_total(2, d) == want2[d]);
  CHECK(counting::count_total(1, 0) == 2);
  CHECK(counting::count_total(1, 1) == 1);

  // Families partition the faces.
  for (int m = 1; m <= 10; ++m)
    for (int d = 0; d <= m; ++d)
      CHECK(counting::count_total(m, d) ==
            counting::count_front(m, d) + counting::count_back(m, d));
}

TEST_CASE("both total-count routes stay consistent through M=14") {
  // count_total internally evaluates the expanded alternating sum and the
  // per-subset recombination and throws if they split; exercise the whole
  // range the formulas are claimed for.
  for (int m = 1; m <= 14; ++m)
    for (int d = 0; d <= m; ++d)
      CHECK_NOTHROW(counting::count_total(m, d));
}

TEST_CASE("vertex count series") {
  CHECK(counting::count_vertices(1) == 2);
  CHECK(counting::count_vertices(2) == 5);
  CHECK(counting::count_vertices(3) == 16);
  CHECK(counting::count_vertices(4) == 65);
  CHECK(counting::count_vertices(5) == 326);
  CHECK(counting::count_vertices(20) == BigInt("6613313319248080001"));
}

TEST_CASE("vertex count equals floor(e M!) via 50-digit arithmetic") {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  const Dec e = exp(Dec(1));
  for (int m = 1; m <= 20; ++m) {
    Dec fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    const Dec scaled = floor(e * fact);
    CHECK(counting::count_vertices(m) == scaled.convert_to<BigInt>());
  }
}

TEST_CASE("edge count is half of M times the vertex count, exactly") {
  CHECK(counting::count_edges(1) == 1);
  CHECK(counting::count_edges(2) == 5);
  CHECK(counting::count_edges(3) == 24);
  CHECK(counting::count_edges(20) == BigInt("66133133192480800010"));
  // The division by two and the match with count_total(M, 1) are checked
  // inside; sweep the supported range.
  for (int m = 1; m <= 24; ++m) CHECK_NOTHROW(counting::count_edges(m));
}

TEST_CASE("facet counts") {
  const counting::FacetCounts f3 = counting::facet_counts(3);
  CHECK(f3.region == 10);
  CHECK(f3.dominant == 6);
  const counting::FacetCounts f2 = counting::facet_counts(2);
  CHECK(f2.region == 5);
  CHECK(f2.dominant == 2);
  // A one-user region is a segment: two facet points, and its dominant face
  // is a single point with no facets at all.
  const counting::FacetCounts f1 = counting::facet_counts(1);
  CHECK(f1.region == 2);
  CHECK(f1.dominant == 0);
}

TEST_CASE("count table and CSV rendering") {
  const auto table = counting::count_table(3);
  REQUIRE(table.size() == 3);
  CHECK(table[2].users == 3);
  CHECK(table[2].total == std::vector<BigInt>{16, 24, 10, 1});
  CHECK(table[2].dominant == std::vector<BigInt>{6, 6, 1});
  CHECK(table[2].front == std::vector<BigInt>{6, 12, 7, 1});
  CHECK(table[2].back == std::vector<BigInt>{10, 12, 3, 0});

  std::ostringstream csv;
  counting::write_csv(csv, counting::count_table(2));
  CHECK(csv.str() ==
        "M,D,N_total,N_dominant,N_front,N_back\n"
        "1,0,2,1,1,1\n"
        "1,1,1,0,1,0\n"
        "2,0,5,2,2,3\n"
        "2,1,5,1,3,2\n"
        "2,2,1,0,1,0\n");

  std::ostringstream with_log;
  counting::write_csv(with_log, counting::count_table(1), true);
  CHECK(with_log.str() ==
        "M,D,N_total,N_dominant,N_front,N_back,log10_N_total\n"
        "1,0,2,1,1,1,0.301\n"
        "1,1,1,0,1,0,0.000\n");
}

TEST_CASE("counting caps and argument checks") {
  CHECK_THROWS_AS(counting::count_table(25), CapacityError);
  CHECK_THROWS_AS(counting::count_total(3, 4), PreconditionError);
  CHECK_THROWS_AS(counting::count_total(0, 0), PreconditionError);
  CHECK_NOTHROW(counting::count_table(24));
}
