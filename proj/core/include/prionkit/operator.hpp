#pragma once

#include <Eigen/Dense>

#include "prionkit/grid.hpp"
#include "prionkit/kernel.hpp"

namespace prionkit {

// Discretization of the linear growth-fragmentation operator
//
//   (L u)(x) = -d/dx(x^nu u) - x^gamma u + 2 int_x^inf y^gamma kappa0(x/y) u(y) dy/y
//
// on a SizeGrid, split into two unit-intensity parts so callers can scale
// them independently:
//   advection()      : -d/dx(x^nu u), first-order upwind (velocity x^nu > 0),
//                      zero inflow at x_min, free outflow at x_max;
//   fragmentation()  : gain - loss for beta0 = 1.
//
// The gain matrix is built conservatively: the fragment mass each parent
// cell j sprays into the relative-size window of each child cell i is
// computed from the kernel's exact partial first moment, so column sums
// reproduce the parent's mass loss exactly, up to the recorded "leak" of
// fragments falling below x_min.
class DiscreteOperator {
 public:
  DiscreteOperator(SizeGrid grid, FragmentationKernel kernel, double gamma,
                   double nu);

  const SizeGrid& grid() const { return grid_; }
  const FragmentationKernel& kernel() const { return kernel_; }
  double gamma() const { return gamma_; }
  double nu() const { return nu_; }

  const Eigen::MatrixXd& advection() const { return adv_; }
  const Eigen::MatrixXd& fragmentation() const { return frag_; }

  // advection_intensity * advection() + frag_intensity * fragmentation().
  // For the normalized eigenproblem both intensities are 1; the direct
  // problem at monomer level V uses (V*tau0, beta0).
  Eigen::MatrixXd matrix(double advection_intensity = 1.0,
                         double frag_intensity = 1.0) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u,
                        double advection_intensity = 1.0,
                        double frag_intensity = 1.0) const;

  // Advection speed x^nu at the nodes (unit intensity).
  const Eigen::VectorXd& speed() const { return speed_; }

  // Mass-rate coefficients of fragments lost below x_min, per node, for
  // beta0 = 1: the leak rate of a density u is leak_mass_coef().dot(u).
  const Eigen::VectorXd& leak_mass_coef() const { return leak_; }

  // Monomer consumption by polymerization, per unit advection intensity:
  // the flux-form quadrature sum_{i<n-1} x_i^nu u_i (x_{i+1}-x_i) that makes
  // the discrete total-protein budget close exactly.
  double consumption(const Eigen::VectorXd& u) const;

  // Number flux out of the domain at x_max per unit advection intensity.
  double outflow_number(const Eigen::VectorXd& u) const;

  // |sum_i w_i x_i (fragmentation() u)_i| / sum_i w_i x_i^(1+gamma) u_i:
  // the discrete residual of "fragmentation conserves mass". Nonzero only
  // through the sub-grid leak and roundoff.
  double fragmentation_mass_residual(const Eigen::VectorXd& u) const;

 private:
  SizeGrid grid_;
  FragmentationKernel kernel_;
  double gamma_, nu_;
  Eigen::MatrixXd adv_, frag_;
  Eigen::VectorXd speed_, leak_;
};

// Validates (gamma, nu) against the well-posedness condition
// gamma + 1 - nu > 0 and gamma >= 0, then builds the operator.
DiscreteOperator assemble_operator(const SizeGrid& grid,
                                   const FragmentationKernel& kernel,
                                   double gamma, double nu);

}  // namespace prionkit
