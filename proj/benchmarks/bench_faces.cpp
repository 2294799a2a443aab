// Microbenchmarks for the hot paths: mutual-information cache construction,
// symbolic face enumeration and merging, the closed-form counters, and the
// brute-force geometric oracle they are checked against.
//
// Channels are the noiseless binary adders from the test support header, so
// results are comparable across machines without fixture files.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "macfaces/macfaces.hpp"
#include "support/channels.hpp"

namespace {

using namespace macfaces;

void BM_MICacheBuild(benchmark::State& state) {
  const ChannelSpec spec = test::make_adder(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    MICache mi(spec);
    benchmark::DoNotOptimize(mi.mi(UserSet::full(spec.users), UserSet()));
  }
}
BENCHMARK(BM_MICacheBuild)->DenseRange(2, 8);

void BM_BuildHRep(benchmark::State& state) {
  const auto mi = std::make_shared<const MICache>(
      test::make_adder(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    HRep hrep = build_hrep(mi);
    benchmark::DoNotOptimize(hrep.constraints.size());
  }
}
BENCHMARK(BM_BuildHRep)->DenseRange(2, 8);

void BM_EnumerateFaces(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto faces = enumerate_faces(users);
    benchmark::DoNotOptimize(faces.size());
  }
}
BENCHMARK(BM_EnumerateFaces)->DenseRange(3, 8);

void BM_MergeAllPairs(benchmark::State& state) {
  const auto faces = enumerate_faces(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    long long merged = 0;
    for (std::size_t i = 0; i < faces.size(); ++i)
      for (std::size_t j = i + 1; j < faces.size(); ++j)
        if (merge_labels(faces[i], faces[j])) ++merged;
    benchmark::DoNotOptimize(merged);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long long>(faces.size()) *
                          static_cast<long long>(faces.size() - 1) / 2);
}
BENCHMARK(BM_MergeAllPairs)->DenseRange(3, 5);

void BM_LocateMinimalFace(benchmark::State& state) {
  const HRep hrep = build_hrep(test::make_adder(3, {0.1, 0.2, 0.3}));
  // A mix of interior, boundary, and outside points.
  std::mt19937 rng(9001);
  std::uniform_real_distribution<double> coord(-0.1, 1.0);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < 64; ++i)
    points.push_back({coord(rng), coord(rng), coord(rng)});
  std::size_t next = 0;
  for (auto _ : state) {
    LocateResult r = locate_minimal_face(hrep, points[next]);
    benchmark::DoNotOptimize(r.index());
    next = (next + 1) % points.size();
  }
}
BENCHMARK(BM_LocateMinimalFace);

void BM_MembershipDecomposed(benchmark::State& state) {
  const HRep hrep = build_hrep(test::make_adder(3, {0.1, 0.2, 0.3}));
  const auto faces = enumerate_faces(3);
  const std::vector<double> r{0.3, 0.2, 0.4};
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(membership_decomposed(hrep, r, faces[next]));
    next = (next + 1) % faces.size();
  }
}
BENCHMARK(BM_MembershipDecomposed);

void BM_CountTable(benchmark::State& state) {
  const int max_users = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto table = counting::count_table(max_users);
    benchmark::DoNotOptimize(table.size());
  }
}
BENCHMARK(BM_CountTable)->Arg(12)->Arg(20)->Arg(24);

void BM_OracleVertices(benchmark::State& state) {
  const HRep hrep = build_hrep(test::make_adder(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto vs = oracle::enumerate_vertices(hrep);
    benchmark::DoNotOptimize(vs.vertices.size());
  }
}
BENCHMARK(BM_OracleVertices)->DenseRange(2, 5);

void BM_OracleLattice(benchmark::State& state) {
  const HRep hrep = build_hrep(test::make_adder(static_cast<int>(state.range(0))));
  const oracle::VertexSet vs = oracle::enumerate_vertices(hrep);
  for (auto _ : state) {
    auto faces = oracle::build_face_lattice(vs, hrep);
    benchmark::DoNotOptimize(faces.size());
  }
}
BENCHMARK(BM_OracleLattice)->DenseRange(2, 4);

void BM_CrossValidate(benchmark::State& state) {
  const ChannelSpec spec = test::make_adder(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto report = oracle::cross_validate(spec);
    benchmark::DoNotOptimize(report.clean());
  }
}
BENCHMARK(BM_CrossValidate)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
