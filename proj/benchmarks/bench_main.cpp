#include <cmath>

#include <benchmark/benchmark.h>

#include "dlaplace/laplace.hpp"
#include "dlaplace/special_functions.hpp"
#include "dlaplace/stirling.hpp"
#include "dlaplace/xorsat_asymptotics.hpp"
#include "dlaplace/xorsat_sim.hpp"

using namespace dlaplace;

static void BM_QInverse(benchmark::State& state) {
  double xi = 2.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_inverse(xi));
    xi = xi < 100.0 ? xi * 1.01 : 2.0001;
  }
}
BENCHMARK(BM_QInverse);

static void BM_StirlingLogTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(StirlingTable::build(state.range(0), StirlingMode::log_space));
}
BENCHMARK(BM_StirlingLogTable)->Arg(1000)->Arg(4800)->Unit(benchmark::kMillisecond);

static void BM_StirlingExactTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(StirlingTable::build(state.range(0), StirlingMode::exact));
}
BENCHMARK(BM_StirlingExactTable)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_GaussianLatticeSum2d(benchmark::State& state) {
  const Region reg = Region::open_box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1));
  const Lattice lat = Lattice::unit(state.range(0), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_lattice_sum(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), lat, reg));
  }
}
BENCHMARK(BM_GaussianLatticeSum2d)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_GridSum(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const XorLattice g{m_for(0.8, n), n};
  const auto table = StirlingTable::build(3 * g.m, StirlingMode::log_space);
  for (auto _ : state) benchmark::DoNotOptimize(grid_sum(table, g, true, 1));
}
BENCHMARK(BM_GridSum)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

static void BM_PeelAndSolve(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto m = static_cast<std::int64_t>(0.95 * static_cast<double>(n));
  std::uint64_t k = 0;
  for (auto _ : state) {
    const auto inst = sample_instance(m, n, derive_seed(1, k++));
    const auto core = peel_2core(inst);
    benchmark::DoNotOptimize(gf2_solve(core.core));
  }
}
BENCHMARK(BM_PeelAndSolve)->Arg(300)->Arg(3000)->Unit(benchmark::kMicrosecond);

static void BM_PositivityCertificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(positivity_certificate(2.5, 0.05, static_cast<int>(state.range(0)), 500));
}
BENCHMARK(BM_PositivityCertificate)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
