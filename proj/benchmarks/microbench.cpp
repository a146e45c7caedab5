// Microbenchmarks for the hot paths of the splitting iterations: projector
// evaluations, the coordinator resolvent, and whole fixed-iteration runs.
#include <benchmark/benchmark.h>

#include "opsplit/bench.hpp"

#include <random>

namespace {

using namespace opsplit;

Vec gaussian_vec(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 5.0);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = g(rng);
  return x;
}

void box_projection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BoxProjection projector(BoxSet(Vec::Constant(n, -1.0), Vec::Ones(n)));
  const Vec x = gaussian_vec(1, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(projector.evaluate(1.0, x));
  }
}
BENCHMARK(box_projection)->Arg(100)->Arg(1000);

void heron_coordinator(benchmark::State& state) {
  const HeronInstance instance = generate_heron(1, 100, 3);
  const ReducedLift lift = heron_reduced_lift(instance);
  const BlockVector x = random_start(2, lift.block_count(), instance.dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coordinator_resolvent(lift, 25.0, x));
  }
}
BENCHMARK(heron_coordinator);

void reduced_iteration(benchmark::State& state) {
  // Cost of 50 reduced-lift iterations on a medium instance; the success
  // test never fires so every run performs the same work.
  const HeronInstance instance = generate_heron(1, 100, 3);
  const ReducedLift lift = heron_reduced_lift(instance);
  const BlockVector x0 = random_start(2, lift.block_count(), instance.dim);
  SolverConfig config;
  config.gamma = 25.0;
  config.lambda = 1.3;
  config.max_iter = 50;
  RunControl control;
  control.record_residuals = false;
  control.success = [](const Vec&) { return false; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_dr_run(lift, config, x0, control));
  }
}
BENCHMARK(reduced_iteration);

void sudoku_fiber_pass(benchmark::State& state) {
  const SudokuConstraints constraints = sudoku_encode(SudokuPuzzle{});
  const Vec x = gaussian_vec(3, kTensorDim);
  const auto& rows = *constraints.fiber_constraints[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(rows.evaluate(1.0, x));
  }
}
BENCHMARK(sudoku_fiber_pass);

void aggregated_resolvent(benchmark::State& state) {
  const int n = 20;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<ResolventPtr> ops;
  for (int i = 0; i < 4; ++i) {
    Eigen::MatrixXd m(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m(a, b) = g(rng);
    m = (m.transpose() * m).eval();
    ops.push_back(std::make_shared<AffineResolvent>(m, gaussian_vec(5 + i, n)));
  }
  ResolventPtr coordinator = ops.back();
  ops.pop_back();
  const ReducedLift lift(std::move(ops), coordinator, n);
  const Vec x = gaussian_vec(9, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolvent_of_sum(lift, 1.0, x));
  }
}
BENCHMARK(aggregated_resolvent);

}  // namespace

BENCHMARK_MAIN();
