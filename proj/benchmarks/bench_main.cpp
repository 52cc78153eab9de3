#include <benchmark/benchmark.h>

#include <cstdint>

#include "spaceform/catalog.hpp"
#include "spaceform/hcc.hpp"

using namespace spaceform;

namespace {

IntMatrix pseudo_random_matrix(std::size_t n, std::uint64_t seed) {
  std::uint64_t s = seed;
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      m(i, j) = Int(static_cast<long>((s >> 16) % 19) - 9);
    }
  }
  return m;
}

}  // namespace

static void BM_snf(benchmark::State& state) {
  IntMatrix m = pseudo_random_matrix(state.range(0), 0x5eed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(snf(m));
  }
}
BENCHMARK(BM_snf)->Arg(4)->Arg(8)->Arg(12);

static void BM_hermite_rows(benchmark::State& state) {
  IntMatrix m = pseudo_random_matrix(state.range(0), 0xbeef);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite_rows(m));
  }
}
BENCHMARK(BM_hermite_rows)->Arg(8)->Arg(16);

static void BM_holonomy_closure(benchmark::State& state) {
  CrystalGroup g = catalog::get("g5").group;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_holonomy(g));
  }
}
BENCHMARK(BM_holonomy_closure);

static void BM_betti_averaging(benchmark::State& state) {
  CrystalGroup g = catalog::get("g6").group;
  HolonomyGroup hol = generate_holonomy(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(betti(g, hol));
  }
}
BENCHMARK(BM_betti_averaging);

static void BM_betti_oracle_degree2(benchmark::State& state) {
  CrystalGroup g = catalog::get("g6").group;
  HolonomyGroup hol = generate_holonomy(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(betti_oracle(g, hol, 2));
  }
}
BENCHMARK(BM_betti_oracle_degree2);

static void BM_torus_action_klein(benchmark::State& state) {
  CrystalGroup g = catalog::get("klein").group;
  for (auto _ : state) {
    benchmark::DoNotOptimize(torus_action(g));
  }
}
BENCHMARK(BM_torus_action_klein);

static void BM_torus_action_b2(benchmark::State& state) {
  // the ell = 2 case: k = 2 with a half-integral lambda
  CrystalGroup g = catalog::get("b2").group;
  for (auto _ : state) {
    benchmark::DoNotOptimize(torus_action(g));
  }
}
BENCHMARK(BM_torus_action_b2);

static void BM_full_report_bott4(benchmark::State& state) {
  CrystalGroup g = catalog::bott(4, "111111").group;
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_report(g, "bott4-111111"));
  }
}
BENCHMARK(BM_full_report_bott4);

BENCHMARK_MAIN();
