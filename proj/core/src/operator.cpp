#include "prionkit/operator.hpp"

#include <cmath>
#include <sstream>

#include "prionkit/errors.hpp"

namespace prionkit {

DiscreteOperator::DiscreteOperator(SizeGrid grid, FragmentationKernel kernel,
                                   double gamma, double nu)
    : grid_(std::move(grid)),
      kernel_(std::move(kernel)),
      gamma_(gamma),
      nu_(nu) {
  const auto n = static_cast<Eigen::Index>(grid_.n());
  const std::vector<double>& x = grid_.x;
  const std::vector<double>& w = grid_.w;
  const std::vector<double> e = cell_edges(grid_);

  speed_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) speed_[i] = std::pow(x[i], nu_);

  // Upwind advection in conservative form: flux through the upper edge of
  // cell i is speed_i * u_i; nothing enters at x_min, the last flux exits.
  adv_ = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    adv_(i, i) -= speed_[i] / w[i];
    if (i > 0) adv_(i, i - 1) += speed_[i - 1] / w[i];
  }

  // Fragmentation for beta0 = 1: parent j loses mass at rate x_j^gamma and
  // sprays 2 x_j^gamma * (x_j * m1) per unit density into each child cell,
  // where m1 is the kernel first moment over the cell's relative-size
  // window. Dividing by the child cell measure x_i w_i turns mass into
  // density. Fragments below the first cell edge are tallied as leak.
  frag_ = Eigen::MatrixXd::Zero(n, n);
  leak_.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double beta_j = std::pow(x[j], gamma_);
    const double spray = 2.0 * beta_j * w[j] * x[j];
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double zlo = e[i] / x[j];
      if (zlo >= 1.0) continue;
      const double zhi = e[i + 1] / x[j];
      const double m1 = kernel_.first_moment_integral(zlo, zhi);
      if (m1 > 0.0) frag_(i, j) = spray * m1 / (x[i] * w[i]);
    }
    leak_[j] = spray * kernel_.first_moment_integral(0.0, e[0] / x[j]);
    frag_(j, j) -= beta_j;
  }
}

Eigen::MatrixXd DiscreteOperator::matrix(double advection_intensity,
                                         double frag_intensity) const {
  return advection_intensity * adv_ + frag_intensity * frag_;
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& u,
                                        double advection_intensity,
                                        double frag_intensity) const {
  if (u.size() != adv_.rows())
    throw DomainError("apply: density size does not match the grid");
  return advection_intensity * (adv_ * u) + frag_intensity * (frag_ * u);
}

double DiscreteOperator::consumption(const Eigen::VectorXd& u) const {
  const std::vector<double>& x = grid_.x;
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < u.size(); ++i)
    acc += speed_[i] * u[i] * (x[i + 1] - x[i]);
  return acc;
}

double DiscreteOperator::outflow_number(const Eigen::VectorXd& u) const {
  return speed_[u.size() - 1] * u[u.size() - 1];
}

double DiscreteOperator::fragmentation_mass_residual(
    const Eigen::VectorXd& u) const {
  const std::vector<double>& x = grid_.x;
  const std::vector<double>& w = grid_.w;
  const Eigen::VectorXd fu = frag_ * u;
  double moved = 0.0, reference = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    moved += w[i] * x[i] * fu[i];
    reference += w[i] * std::pow(x[i], 1.0 + gamma_) * u[i];
  }
  if (reference == 0.0) return 0.0;
  return std::abs(moved) / reference;
}

DiscreteOperator assemble_operator(const SizeGrid& grid,
                                   const FragmentationKernel& kernel,
                                   double gamma, double nu) {
  if (!(gamma >= 0.0)) {
    std::ostringstream os;
    os << "assemble_operator: gamma must be >= 0, got " << gamma;
    throw ValidationError(os.str());
  }
  if (!(gamma + 1.0 - nu > 0.0)) {
    std::ostringstream os;
    os << "assemble_operator: requires gamma + 1 - nu > 0, got gamma=" << gamma
       << " nu=" << nu << " (gamma + 1 - nu = " << gamma + 1.0 - nu << ")";
    throw ValidationError(os.str());
  }
  return DiscreteOperator(grid, kernel, gamma, nu);
}

}  // namespace prionkit
