#include "prionkit/eigensolver.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "prionkit/errors.hpp"

namespace prionkit {

namespace {

double weighted_dot(const SizeGrid& grid, const Eigen::VectorXd& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += grid.w[i] * v[i];
  return acc;
}

// Weighted-L1 relative residual ||L u - r u|| / ||u||.
double operator_residual(const Eigen::MatrixXd& L, const SizeGrid& grid,
                         const Eigen::VectorXd& u, double r) {
  const Eigen::VectorXd lu = L * u;
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    num += grid.w[i] * std::abs(lu[i] - r * u[i]);
    den += grid.w[i] * std::abs(u[i]);
  }
  return num / den;
}

}  // namespace

EigenSolution principal_eigenpair(const DiscreteOperator& op,
                                  const SolverOptions& options,
                                  double advection_intensity,
                                  double frag_intensity) {
  if (!(options.tol > 0.0 && options.tol <= 1e-2))
    throw DomainError("principal_eigenpair: tol must lie in (0, 1e-2]");
  if (options.max_iter < 1)
    throw DomainError("principal_eigenpair: max_iter must be >= 1");

  const SizeGrid& grid = op.grid();
  const auto n = static_cast<Eigen::Index>(grid.n());
  const Eigen::MatrixXd L = op.matrix(advection_intensity, frag_intensity);

  // Shift above every row sum: sigma*I - L is then strictly diagonally
  // dominant with nonpositive off-diagonals, hence inverse-nonnegative.
  double sigma = L.rowwise().sum().maxCoeff() + 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sigma * Eigen::MatrixXd::Identity(n, n) - L);

  Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
  u /= weighted_dot(grid, u);

  double r = 0.0, r_prev = std::nan("");
  double residual = std::nan("");
  bool reshifted = false;

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    Eigen::VectorXd y = lu.solve(u);
    y = y.cwiseMax(0.0);  // shave roundoff below zero; exact value is >= 0
    const double theta = weighted_dot(grid, y) / weighted_dot(grid, u);
    r = sigma - 1.0 / theta;
    u = y / weighted_dot(grid, y);

    const double drift = std::abs(r - r_prev);  // NaN on the first pass
    if (!reshifted && drift < 1e-3 * std::max(std::abs(r), 1e-30)) {
      // Estimate has settled; move the shift next to the eigenvalue so the
      // resolvent iteration contracts hard from here on.
      sigma = r + 1.0;
      lu.compute(sigma * Eigen::MatrixXd::Identity(n, n) - L);
      reshifted = true;
      r_prev = r;
      continue;
    }
    if (drift <= options.tol * std::max(std::abs(r), 1e-30)) {
      residual = operator_residual(L, grid, u, r);
      if (residual <= 10.0 * options.tol) {
        EigenSolution sol;
        sol.eigenvalue = r;
        sol.density = u;
        sol.grid = grid;
        sol.mean_size = [&] {
          double acc = 0.0;
          for (Eigen::Index i = 0; i < n; ++i)
            acc += grid.w[i] * grid.x[i] * u[i];
          return acc;
        }();
        sol.residual = residual;
        sol.iterations = iter;
        sol.gamma = op.gamma();
        sol.nu = op.nu();
        return sol;
      }
    }
    r_prev = r;
  }

  if (std::isnan(residual)) residual = operator_residual(L, grid, u, r);
  std::ostringstream os;
  os << "principal_eigenpair: no convergence after " << options.max_iter
     << " iterations (estimate " << r << ", residual " << residual << ")";
  throw ConvergenceError(os.str(), options.max_iter, r, residual,
                         std::vector<double>(u.data(), u.data() + u.size()));
}

double mean_size(const SizeGrid& grid, const Eigen::VectorXd& density) {
  if (density.size() != static_cast<Eigen::Index>(grid.n()))
    throw DomainError("mean_size: density size does not match the grid");
  double integral = 0.0, first_moment = 0.0;
  for (Eigen::Index i = 0; i < density.size(); ++i) {
    if (density[i] < 0.0)
      throw DomainError("mean_size: density must be nonnegative");
    integral += grid.w[i] * density[i];
    first_moment += grid.w[i] * grid.x[i] * density[i];
  }
  if (std::abs(integral - 1.0) > 1e-8)
    throw DomainError("mean_size: density must integrate to 1");
  return first_moment;
}

}  // namespace prionkit
