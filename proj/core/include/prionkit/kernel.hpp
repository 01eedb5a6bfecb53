#pragma once

#include <vector>

namespace prionkit {

// Self-similar fragmentation kernel kappa0 on [0,1]: a polymer of size y
// splits into fragments of size z*y with probability density kappa0(z).
// Every family must be a symmetric probability density with mean 1/2
// (each split produces two fragments that together restore the parent).
class FragmentationKernel {
 public:
  enum class Family { Uniform, SymmetricPowerPair, Tabulated };

  // kappa0(z) = 1 on [0,1].
  static FragmentationKernel uniform();

  // kappa0(z) proportional to z^p (1-z)^p, p >= 0 (p = 0 is uniform).
  static FragmentationKernel symmetric_power_pair(double p);

  // Piecewise-linear density through (z_i, d_i); z must start at 0, end at 1,
  // be strictly increasing, and d must be nonnegative. Values are used as
  // given; normalization is the caller's responsibility (check_kernel audits).
  static FragmentationKernel tabulated(std::vector<double> z,
                                       std::vector<double> d);

  Family family() const { return family_; }
  bool analytic() const { return family_ != Family::Tabulated; }
  double power() const { return p_; }
  const std::vector<double>& table_z() const { return tab_z_; }
  const std::vector<double>& table_density() const { return tab_d_; }

  // kappa0(z) for z in [0,1].
  double density(double z) const;

  // integral of z * kappa0(z) over [zlo, zhi] clamped to [0,1]; this is the
  // mass fraction of fragments landing in that relative-size window, and the
  // quantity the discrete gain operator is built from. Exact for Uniform and
  // Tabulated; Gauss-Legendre for SymmetricPowerPair (exact for integer p).
  double first_moment_integral(double zlo, double zhi) const;

 private:
  FragmentationKernel() = default;

  Family family_ = Family::Uniform;
  double p_ = 0.0;     // SymmetricPowerPair exponent
  double norm_ = 1.0;  // SymmetricPowerPair normalizing constant
  std::vector<double> tab_z_, tab_d_;
};

// Free-function spelling of FragmentationKernel::density.
double kernel_density(const FragmentationKernel& kernel, double z);

// Residuals of the three kernel axioms, measured by an independent
// quadrature (not the kernel's own closed forms): unit normalization,
// symmetry about 1/2, and mean fragment fraction 1/2.
struct KernelCheckReport {
  double normalization_residual;  // |integral of kappa0 - 1|
  double symmetry_residual;       // max over samples |kappa0(z)-kappa0(1-z)|
  double first_moment_residual;   // |integral of z*kappa0 - 1/2|
  double tolerance;               // applied: analytic vs tabulated
  bool pass;
};

inline constexpr double kKernelTolAnalytic = 1e-12;
inline constexpr double kKernelTolTabulated = 1e-6;

// n_quad >= 16 is the total quadrature-node budget (composite 16-point
// Gauss-Legendre panels); it also sets the symmetry sampling density.
KernelCheckReport check_kernel(const FragmentationKernel& kernel, int n_quad);

}  // namespace prionkit
