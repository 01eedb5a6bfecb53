#include "doctest.h"
#include "prionkit/errors.hpp"
#include "prionkit/simulator.hpp"

#include <cmath>
#include <string>

using namespace prionkit;

namespace {

SimConfig base_config(std::size_t n, double x_min = 1e-2, double x_max = 30.0) {
  SimConfig cfg;
  cfg.grid = make_grid(x_min, x_max, n);
  cfg.u0 = initial_exponential(cfg.grid);
  return cfg;
}

EigenSolution solve_on(const SizeGrid& g, double gamma = 1.0, double nu = 0.0) {
  const auto op = assemble_operator(g, FragmentationKernel::uniform(), gamma, nu);
  return principal_eigenpair(op);
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("disease-free rest state is preserved exactly") {
  SimConfig cfg = base_config(64);
  cfg.u0.setZero();
  cfg.V0 = 1.0;  // lambda/delta = 1: the monomer balance is exactly zero
  cfg.mode = SimMode::FullNonlinear;
  cfg.dt = 5e-4;
  cfg.t_end = 0.5;
  cfg.output_stride = 100;

  const Trajectory traj = simulate(cfg);
  for (const SimState& s : traj.states) {
    CHECK(s.V == 1.0);
    CHECK(s.P == 0.0);
    CHECK(s.M == 0.0);
  }
  CHECK(traj.protein_drift == 0.0);
  CHECK(traj.outflow_mass == 0.0);
  CHECK(traj.leak_mass == 0.0);
  CHECK(traj.max_V_deviation == 0.0);
}

TEST_CASE("uninfected monomer pool relaxes to lambda/delta") {
  SimConfig cfg = base_config(64);
  cfg.u0.setZero();
  cfg.V0 = 2.0;  // V' = 1 - V  =>  V(t) = 1 + e^{-t}
  cfg.mode = SimMode::FullNonlinear;
  cfg.dt = 2.5e-4;  // the Courant bound sees the elevated initial V
  cfg.t_end = 0.5;
  cfg.output_stride = 2000;

  const Trajectory traj = simulate(cfg);
  CHECK(traj.states.back().V ==
        doctest::Approx(1.0 + std::exp(-0.5)).epsilon(1e-3));
  CHECK(traj.max_V_deviation <= 1.0);
  CHECK(traj.max_V_deviation >= 0.9);
}

TEST_CASE("frozen-monomer growth rate matches the eigenvalue on its own grid") {
  SimConfig cfg = base_config(192);
  cfg.mode = SimMode::FrozenV;
  cfg.dt = 2e-4;
  cfg.t_end = 16.0;
  cfg.output_stride = 500;

  const Trajectory traj = simulate(cfg);
  const EigenSolution ref = solve_on(cfg.grid);

  const double rate = empirical_growth_rate(traj, 8.0, 16.0);
  CHECK(std::abs(rate - ref.eigenvalue) <= 5e-3 * std::abs(ref.eigenvalue));

  // polymer mass grows at the same exponential rate as polymer number
  const SimState& a = traj.states[traj.states.size() / 2];
  const SimState& b = traj.states.back();
  const double rate_mass = std::log(b.M / a.M) / (b.time - a.time);
  CHECK(std::abs(rate_mass - ref.eigenvalue) <=
        1e-2 * std::abs(ref.eigenvalue));

  // the transient dies out: normalized shapes approach the eigenfunction
  const ShapeDistanceSeries series = shape_convergence(traj, ref);
  REQUIRE(series.distance.size() == traj.states.size());
  for (bool ok : series.valid) CHECK(ok);
  CHECK(series.distance.back() <= 5e-2);
  CHECK(series.distance.back() <= 1e-3 * series.distance.front());
  // decreasing across coarse checkpoints (every ~2 time units) until the
  // distance hits the discretization floor
  for (std::size_t k = 20; k <= 120 && k < series.distance.size(); k += 20)
    CHECK(series.distance[k] < series.distance[k - 20]);

  // frozen mode never touches the monomer pool
  for (const SimState& s : traj.states) CHECK(s.V == 1.0);
  CHECK(traj.max_V_deviation == 0.0);
  CHECK(std::isnan(traj.protein_drift));
}

TEST_CASE("an eigenfunction initial condition keeps its shape") {
  SimConfig cfg = base_config(160);
  const EigenSolution ref = solve_on(cfg.grid);
  cfg.u0 = ref.density;
  cfg.mode = SimMode::FrozenV;
  cfg.dt = 2e-4;
  cfg.t_end = 1.0;
  cfg.output_stride = 500;

  const Trajectory traj = simulate(cfg);
  const ShapeDistanceSeries series = shape_convergence(traj, ref);
  for (double d : series.distance) CHECK(d <= 1e-6);

  // and the number grows like exp(r t) up to the Euler step bias
  const double rate = empirical_growth_rate(traj, 0.0, 1.0);
  CHECK(std::abs(rate - ref.eigenvalue) <= 1e-3 * std::abs(ref.eigenvalue));
}

TEST_CASE("shape distance interpolates references living on another grid") {
  SimConfig cfg = base_config(96);
  cfg.mode = SimMode::FrozenV;
  cfg.dt = 4e-4;
  cfg.t_end = 8.0;
  cfg.output_stride = 2500;

  const Trajectory traj = simulate(cfg);
  const EigenSolution ref = solve_on(make_grid(1e-3, 40.0, 128));
  const ShapeDistanceSeries series = shape_convergence(traj, ref);
  CHECK(series.distance.back() < series.distance.front());
  CHECK(series.distance.back() <= 5e-2);

  // a reference with no support on the trajectory grid is rejected
  EigenSolution far = ref;
  far.grid = make_grid(100.0, 200.0, 128);
  far.density = Eigen::VectorXd::Ones(128);
  CHECK_THROWS_AS(shape_convergence(traj, far), DomainError);

  EigenSolution zero = ref;
  zero.density.setZero();
  CHECK_THROWS_AS(shape_convergence(traj, zero), DomainError);
}

TEST_CASE("total-protein budget residual is first order in dt") {
  SimConfig cfg = base_config(192);
  cfg.u0 = 0.2 * initial_exponential(cfg.grid);
  cfg.V0 = 1.0;
  cfg.mode = SimMode::FullNonlinear;
  cfg.t_end = 4.0;
  cfg.output_stride = 5000;

  double drift[3];
  const double dts[3] = {2e-4, 1e-4, 5e-5};
  for (int k = 0; k < 3; ++k) {
    cfg.dt = dts[k];
    const Trajectory traj = simulate(cfg);
    drift[k] = traj.protein_drift;
    CHECK(std::isfinite(drift[k]));
    CHECK(traj.max_V_deviation > 0.0);  // the pool is actually consumed
  }
  CHECK(drift[0] == doctest::Approx(8.197e-5).epsilon(2e-2));
  CHECK(drift[0] / drift[1] == doctest::Approx(2.0).epsilon(0.05));
  CHECK(drift[1] / drift[2] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("synthetic trajectories give exact regression slopes") {
  Trajectory traj;
  for (int k = 0; k <= 20; ++k) {
    SimState s;
    s.time = 0.5 * k;
    s.P = 3.0 * std::exp(0.18 * s.time);
    traj.states.push_back(s);
  }
  CHECK(empirical_growth_rate(traj, 0.0, 10.0) ==
        doctest::Approx(0.18).epsilon(1e-12));
  CHECK(empirical_growth_rate(traj, 2.0, 7.0) ==
        doctest::Approx(0.18).epsilon(1e-12));

  for (SimState& s : traj.states) s.P = 42.0;
  CHECK(empirical_growth_rate(traj, 0.0, 10.0) ==
        doctest::Approx(0.0).epsilon(1e-15));

  // window validation
  CHECK_THROWS_AS(empirical_growth_rate(traj, 5.0, 5.0), DomainError);
  CHECK_THROWS_AS(empirical_growth_rate(traj, 8.0, 2.0), DomainError);
  CHECK_THROWS_AS(empirical_growth_rate(traj, 0.0, 11.0), DomainError);
  CHECK_THROWS_AS(empirical_growth_rate(traj, 0.1, 0.4), DomainError);  // < 2 samples

  traj.states[4].P = 0.0;
  CHECK_THROWS_AS(empirical_growth_rate(traj, 0.0, 10.0), DomainError);

  Trajectory empty;
  CHECK_THROWS_AS(empirical_growth_rate(empty, 0.0, 1.0), DomainError);
}

TEST_CASE("step-size admissibility is enforced up front") {
  SimConfig cfg = base_config(64);
  cfg.mode = SimMode::FrozenV;
  cfg.t_end = 1.0;

  cfg.dt = 1e-3;  // advection Courant number > 1 on this grid
  try {
    simulate(cfg);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("CFL") != std::string::npos);
  }

  // with strong fragmentation the positivity bound binds first
  cfg.dt = 3e-4;
  cfg.params.beta0 = 200.0;
  try {
    simulate(cfg);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("positivity") != std::string::npos);
  }

  cfg.params.beta0 = 1.0;
  cfg.dt = 3e-4;  // admissible again
  cfg.t_end = 0.01;
  CHECK_NOTHROW(simulate(cfg));
}

TEST_CASE("configuration validation") {
  SimConfig good = base_config(64);
  good.dt = 3e-4;
  good.t_end = 0.01;

  SimConfig c = good;
  c.dt = 0.0;
  CHECK_THROWS_AS(simulate(c), ValidationError);

  c = good;
  c.t_end = 1e-5;  // shorter than one step
  CHECK_THROWS_AS(simulate(c), ValidationError);

  c = good;
  c.output_stride = 0;
  CHECK_THROWS_AS(simulate(c), ValidationError);

  c = good;
  c.u0 = Eigen::VectorXd::Ones(10);
  CHECK_THROWS_AS(simulate(c), ValidationError);

  c = good;
  c.u0[3] = -1.0;
  CHECK_THROWS_AS(simulate(c), ValidationError);

  c = good;
  c.V0 = -0.5;
  CHECK_THROWS_AS(simulate(c), ValidationError);

  c = good;
  c.params.nu = 2.5;  // gamma + 1 - nu <= 0
  try {
    simulate(c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("gamma") != std::string::npos);
  }
}

TEST_CASE("time horizon is truncated to whole steps") {
  SimConfig cfg = base_config(64);
  cfg.mode = SimMode::FrozenV;
  cfg.dt = 5e-4;
  cfg.t_end = 10.3 * 5e-4;
  const Trajectory traj = simulate(cfg);
  CHECK(traj.states.back().time == doctest::Approx(10 * 5e-4).epsilon(1e-12));
}

TEST_CASE("named initial profiles") {
  const SizeGrid g = make_grid(0.1, 10.0, 64);
  const Eigen::VectorXd e = initial_exponential(g);
  CHECK(e[0] == doctest::Approx(std::exp(-g.x[0])).epsilon(1e-15));
  CHECK(e.minCoeff() > 0.0);

  const Eigen::VectorXd gau = initial_gaussian(g, 2.0, 0.5);
  CHECK(gau.maxCoeff() <= 1.0);
  CHECK(gau.minCoeff() >= 0.0);
  CHECK_THROWS_AS(initial_gaussian(g, 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(initial_gaussian(g, 2.0, -1.0), DomainError);
}

}  // TEST_SUITE
