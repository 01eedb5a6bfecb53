#include "prionkit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prionkit/errors.hpp"
#include "prionkit/operator.hpp"

namespace prionkit {

namespace {

double weighted_sum(const SizeGrid& grid, const Eigen::VectorXd& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += grid.w[i] * v[i];
  return acc;
}

double weighted_first_moment(const SizeGrid& grid, const Eigen::VectorXd& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    acc += grid.w[i] * grid.x[i] * v[i];
  return acc;
}

SimState snapshot(double t, double V, const SizeGrid& grid,
                  const Eigen::VectorXd& u) {
  SimState s;
  s.time = t;
  s.V = V;
  s.u = u;
  s.P = weighted_sum(grid, u);
  s.M = weighted_first_moment(grid, u);
  return s;
}

void check_config(const SimConfig& c) {
  const ValidationReport rep = validate_params(c.params);
  if (!rep.pass()) {
    std::ostringstream os;
    os << "simulate: invalid parameters:";
    for (const auto& chk : rep.checks)
      if (!chk.ok) os << " [" << chk.name << "]";
    throw ValidationError(os.str());
  }
  if (!(c.dt > 0.0)) throw ValidationError("simulate: dt must be positive");
  if (!(c.t_end >= c.dt))
    throw ValidationError("simulate: t_end must be at least one step");
  if (c.output_stride < 1)
    throw ValidationError("simulate: output stride must be >= 1");
  if (c.u0.size() != static_cast<Eigen::Index>(c.grid.n()))
    throw ValidationError("simulate: u0 size does not match the grid");
  if (c.u0.size() > 0 && c.u0.minCoeff() < 0.0)
    throw ValidationError("simulate: u0 must be nonnegative");
  if (!(c.V0 >= 0.0)) throw ValidationError("simulate: V0 must be >= 0");
}

}  // namespace

Trajectory simulate(const SimConfig& config) {
  check_config(config);

  const ModelParams& p = config.params;
  const SizeGrid& grid = config.grid;
  const DiscreteOperator op =
      assemble_operator(grid, config.kernel, p.gamma, p.nu);

  const double V_bar = steady_monomer(p);
  const bool frozen = config.mode == SimMode::FrozenV;
  // V never exceeds max(V0, lambda/delta): dV <= lambda - delta*V.
  const double V_bound = frozen ? V_bar : std::max(config.V0, V_bar);

  // Step-size admissibility. First the advection CFL bound, then the
  // sharper per-node positivity bound with the loss diagonal included.
  const double max_speed = op.speed().maxCoeff();
  const double min_w = *std::min_element(grid.w.begin(), grid.w.end());
  if (config.dt * V_bound * p.tau0 * max_speed / min_w > 1.0) {
    std::ostringstream os;
    os << "simulate: CFL violated: dt * max(V tau(x)) / min cell width = "
       << config.dt * V_bound * p.tau0 * max_speed / min_w << " > 1";
    throw ValidationError(os.str());
  }
  double max_diag = 0.0;
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double d = V_bound * p.tau0 * op.speed()[i] / grid.w[i] +
                     p.beta0 * std::pow(grid.x[i], p.gamma) + p.mu0;
    max_diag = std::max(max_diag, d);
  }
  if (config.dt * max_diag > 1.0) {
    std::ostringstream os;
    os << "simulate: positivity bound violated: dt * max(advection/width + "
          "loss rate) = "
       << config.dt * max_diag << " > 1; reduce dt";
    throw ValidationError(os.str());
  }

  const long n_steps =
      static_cast<long>(std::floor(config.t_end / config.dt + 1e-9));

  Trajectory traj;
  traj.grid = grid;

  Eigen::VectorXd u = config.u0;
  double V = frozen ? V_bar : config.V0;
  double out_acc = 0.0, leak_acc = 0.0, source_acc = 0.0;
  const double protein0 = V + weighted_first_moment(grid, u);

  traj.states.push_back(snapshot(0.0, V, grid, u));

  // In FrozenV mode the operator never changes; fold everything into one
  // matrix so each step is a single matvec.
  Eigen::MatrixXd L_frozen;
  if (frozen) {
    L_frozen = op.matrix(V_bar * p.tau0, p.beta0);
    L_frozen.diagonal().array() -= p.mu0;
  }

  for (long k = 0; k < n_steps; ++k) {
    const double ai = (frozen ? V_bar : V) * p.tau0;

    Eigen::VectorXd du;
    if (frozen) {
      du = L_frozen * u;
    } else {
      du = ai * (op.advection() * u) + p.beta0 * (op.fragmentation() * u) -
           p.mu0 * u;
    }

    const double cons = ai * op.consumption(u);
    const double out_mass = grid.x_max() * ai * op.outflow_number(u);
    const double leak = p.beta0 * op.leak_mass_coef().dot(u);
    const double g_before =
        p.lambda - p.delta * V - p.mu0 * weighted_first_moment(grid, u);

    u += config.dt * du;
    if (u.minCoeff() < -1e-12) {
      std::ostringstream os;
      os << "simulate: density went negative (" << u.minCoeff() << ") at t="
         << (k + 1) * config.dt << "; reduce dt";
      throw NumericalAbort(os.str());
    }
    double V_next = V;
    if (!frozen) {
      V_next = V + config.dt * (p.lambda - p.delta * V - cons);
      if (V_next < 0.0) {
        std::ostringstream os;
        os << "simulate: monomer level went negative at t="
           << (k + 1) * config.dt << "; reduce dt";
        throw NumericalAbort(os.str());
      }
    }

    out_acc += config.dt * out_mass;
    leak_acc += config.dt * leak;
    const double g_after = p.lambda - p.delta * V_next -
                           p.mu0 * weighted_first_moment(grid, u);
    source_acc += 0.5 * config.dt * (g_before + g_after);

    V = V_next;
    traj.max_V_deviation =
        std::max(traj.max_V_deviation, std::abs(V - V_bar) / V_bar);

    if ((k + 1) % config.output_stride == 0 || k + 1 == n_steps)
      traj.states.push_back(snapshot((k + 1) * config.dt, V, grid, u));
  }

  traj.outflow_mass = out_acc;
  traj.leak_mass = leak_acc;
  if (!frozen) {
    const double protein_end = V + weighted_first_moment(grid, u);
    traj.protein_drift =
        std::abs(protein_end - protein0 - source_acc + out_acc + leak_acc);
  }
  return traj;
}

double empirical_growth_rate(const Trajectory& traj, double t_lo,
                             double t_hi) {
  if (traj.states.empty()) throw DomainError("empirical_growth_rate: empty trajectory");
  if (!(t_lo < t_hi) || t_lo < traj.states.front().time ||
      t_hi > traj.states.back().time + 1e-12)
    throw DomainError(
        "empirical_growth_rate: window must lie inside the trajectory span");

  std::vector<double> ts, ys;
  for (const SimState& s : traj.states) {
    if (s.time < t_lo - 1e-12 || s.time > t_hi + 1e-12) continue;
    if (!(s.P > 0.0))
      throw DomainError(
          "empirical_growth_rate: polymer number must stay positive in the "
          "window");
    ts.push_back(s.time);
    ys.push_back(std::log(s.P));
  }
  if (ts.size() < 2)
    throw DomainError("empirical_growth_rate: need at least two samples");

  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    y_mean += ys[i];
  }
  t_mean /= ts.size();
  y_mean /= ys.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    num += (ts[i] - t_mean) * (ys[i] - y_mean);
    den += (ts[i] - t_mean) * (ts[i] - t_mean);
  }
  return num / den;
}

ShapeDistanceSeries shape_convergence(const Trajectory& traj,
                                      const EigenSolution& reference) {
  const SizeGrid& grid = traj.grid;
  if (reference.density.size() == 0 || reference.density.maxCoeff() <= 0.0)
    throw DomainError("shape_convergence: reference density is zero");

  // Bring the reference onto the trajectory grid if it lives elsewhere.
  Eigen::VectorXd ref;
  bool same_grid = reference.grid.n() == grid.n();
  if (same_grid) {
    for (std::size_t i = 0; i < grid.n() && same_grid; ++i)
      same_grid = std::abs(reference.grid.x[i] - grid.x[i]) <=
                  1e-12 * grid.x[i];
  }
  if (same_grid) {
    ref = reference.density;
  } else {
    ref.resize(static_cast<Eigen::Index>(grid.n()));
    const auto& rx = reference.grid.x;
    for (std::size_t i = 0; i < grid.n(); ++i) {
      const double x = grid.x[i];
      if (x <= rx.front() || x >= rx.back()) {
        ref[static_cast<Eigen::Index>(i)] = 0.0;
        continue;
      }
      const auto it = std::upper_bound(rx.begin(), rx.end(), x);
      const std::size_t hi = static_cast<std::size_t>(it - rx.begin());
      const double t = (x - rx[hi - 1]) / (rx[hi] - rx[hi - 1]);
      ref[static_cast<Eigen::Index>(i)] =
          reference.density[static_cast<Eigen::Index>(hi - 1)] +
          t * (reference.density[static_cast<Eigen::Index>(hi)] -
               reference.density[static_cast<Eigen::Index>(hi - 1)]);
    }
    const double mass = weighted_sum(grid, ref);
    if (!(mass > 0.0))
      throw DomainError(
          "shape_convergence: reference does not overlap the trajectory grid");
    ref /= mass;
  }

  ShapeDistanceSeries series;
  for (const SimState& s : traj.states) {
    series.time.push_back(s.time);
    if (!(s.P > 0.0)) {
      series.distance.push_back(std::nan(""));
      series.valid.push_back(false);
      continue;
    }
    double dist = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i)
      dist += grid.w[i] *
              std::abs(s.u[static_cast<Eigen::Index>(i)] / s.P -
                       ref[static_cast<Eigen::Index>(i)]);
    series.distance.push_back(dist);
    series.valid.push_back(true);
  }
  return series;
}

Eigen::VectorXd initial_exponential(const SizeGrid& grid) {
  Eigen::VectorXd u(static_cast<Eigen::Index>(grid.n()));
  for (std::size_t i = 0; i < grid.n(); ++i)
    u[static_cast<Eigen::Index>(i)] = std::exp(-grid.x[i]);
  return u;
}

Eigen::VectorXd initial_gaussian(const SizeGrid& grid, double center,
                                 double width) {
  if (!(width > 0.0)) throw DomainError("initial_gaussian: width must be > 0");
  Eigen::VectorXd u(static_cast<Eigen::Index>(grid.n()));
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double d = (grid.x[i] - center) / width;
    u[static_cast<Eigen::Index>(i)] = std::exp(-0.5 * d * d);
  }
  return u;
}

}  // namespace prionkit
