// Microbenchmarks for the numerical hot paths: operator assembly, operator
// application, the eigensolve, a simulation step, and the panel fit.
#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "prionkit/eigensolver.hpp"
#include "prionkit/grid.hpp"
#include "prionkit/kernel.hpp"
#include "prionkit/operator.hpp"
#include "prionkit/simulator.hpp"
#include "prionkit/strain_fit.hpp"

namespace {

using namespace prionkit;

void bm_assemble_operator(benchmark::State& state) {
  const SizeGrid grid =
      make_grid(1e-4, 50.0, static_cast<std::size_t>(state.range(0)));
  const FragmentationKernel kernel = FragmentationKernel::uniform();
  for (auto _ : state) {
    DiscreteOperator op = assemble_operator(grid, kernel, 1.0, 0.0);
    benchmark::DoNotOptimize(op);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_assemble_operator)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void bm_operator_apply(benchmark::State& state) {
  const SizeGrid grid =
      make_grid(1e-4, 50.0, static_cast<std::size_t>(state.range(0)));
  const auto op =
      assemble_operator(grid, FragmentationKernel::uniform(), 1.0, 0.0);
  const Eigen::MatrixXd L = op.matrix(1.0, 1.0);
  Eigen::VectorXd u = initial_exponential(grid);
  Eigen::VectorXd out(u.size());
  for (auto _ : state) {
    out.noalias() = L * u;
    benchmark::DoNotOptimize(out);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_operator_apply)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void bm_eigensolve(benchmark::State& state) {
  const SizeGrid grid =
      make_grid(1e-4, 50.0, static_cast<std::size_t>(state.range(0)));
  const auto op =
      assemble_operator(grid, FragmentationKernel::uniform(), 1.0, 0.0);
  for (auto _ : state) {
    EigenSolution sol = principal_eigenpair(op);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(bm_eigensolve)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);

void bm_simulate_day(benchmark::State& state) {
  SimConfig sc;
  sc.grid = make_grid(1e-2, 30.0, static_cast<std::size_t>(state.range(0)));
  sc.u0 = initial_exponential(sc.grid);
  sc.t_end = 1.0;
  sc.dt = 2e-4;
  sc.output_stride = 1 << 20;  // first and last samples only
  for (auto _ : state) {
    Trajectory traj = simulate(sc);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(bm_simulate_day)->Arg(96)->Arg(192)->Unit(benchmark::kMillisecond);

std::vector<StrainRecord> panel() {
  return {{"a", 0.05, 2.0},   {"b", 0.024, 2.9}, {"c", 0.015, 2.8},
          {"d", 0.11, 1.6},   {"e", 0.18, 1.7},  {"f", 0.07, 1.85},
          {"g", 0.17, 2.2},   {"h", 0.07, 2.2}};
}

void bm_fit_mu0_zero(benchmark::State& state) {
  const std::vector<StrainRecord> recs = panel();
  for (auto _ : state) {
    FitResult f = fit(recs, FitVariant::Mu0Zero);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(bm_fit_mu0_zero)->Unit(benchmark::kMillisecond);

void bm_fit_mu0_free(benchmark::State& state) {
  const std::vector<StrainRecord> recs = panel();
  for (auto _ : state) {
    FitResult f = fit(recs, FitVariant::Mu0Free);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(bm_fit_mu0_free)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
