#include "prionkit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prionkit/errors.hpp"
#include "prionkit/quadrature.hpp"

namespace prionkit {

namespace {

// Linear interpolation inside a table segment [z0, z1].
double lerp_at(double z, double z0, double z1, double d0, double d1) {
  const double t = (z - z0) / (z1 - z0);
  return d0 + t * (d1 - d0);
}

}  // namespace

FragmentationKernel FragmentationKernel::uniform() {
  FragmentationKernel k;
  k.family_ = Family::Uniform;
  return k;
}

FragmentationKernel FragmentationKernel::symmetric_power_pair(double p) {
  if (!(p >= 0.0))
    throw ValidationError("symmetric_power_pair: exponent p must be >= 0");
  FragmentationKernel k;
  k.family_ = Family::SymmetricPowerPair;
  k.p_ = p;
  k.norm_ = 1.0 / std::beta(p + 1.0, p + 1.0);
  return k;
}

FragmentationKernel FragmentationKernel::tabulated(std::vector<double> z,
                                                   std::vector<double> d) {
  if (z.size() < 2 || z.size() != d.size())
    throw ValidationError(
        "tabulated kernel: need matching z/density arrays with >= 2 nodes");
  if (z.front() != 0.0 || z.back() != 1.0)
    throw ValidationError("tabulated kernel: z must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < z.size(); ++i)
    if (!(z[i] < z[i + 1]))
      throw ValidationError(
          "tabulated kernel: z nodes must be strictly increasing");
  for (double v : d)
    if (!(v >= 0.0))
      throw ValidationError("tabulated kernel: density must be >= 0");
  FragmentationKernel k;
  k.family_ = Family::Tabulated;
  k.tab_z_ = std::move(z);
  k.tab_d_ = std::move(d);
  return k;
}

double FragmentationKernel::density(double z) const {
  if (!(z >= 0.0 && z <= 1.0)) {
    std::ostringstream os;
    os << "kernel density: z must lie in [0,1], got " << z;
    throw DomainError(os.str());
  }
  switch (family_) {
    case Family::Uniform:
      return 1.0;
    case Family::SymmetricPowerPair:
      if (p_ == 0.0) return 1.0;  // avoid 0^0 at the endpoints
      return norm_ * std::pow(z, p_) * std::pow(1.0 - z, p_);
    case Family::Tabulated: {
      auto it = std::upper_bound(tab_z_.begin(), tab_z_.end(), z);
      if (it == tab_z_.end()) return tab_d_.back();  // z == 1 exactly
      const std::size_t hi = static_cast<std::size_t>(it - tab_z_.begin());
      const std::size_t lo = hi - 1;
      return lerp_at(z, tab_z_[lo], tab_z_[hi], tab_d_[lo], tab_d_[hi]);
    }
  }
  return 0.0;  // unreachable
}

double FragmentationKernel::first_moment_integral(double zlo,
                                                  double zhi) const {
  zlo = std::clamp(zlo, 0.0, 1.0);
  zhi = std::clamp(zhi, 0.0, 1.0);
  if (!(zhi > zlo)) return 0.0;
  switch (family_) {
    case Family::Uniform:
      return 0.5 * (zhi * zhi - zlo * zlo);
    case Family::SymmetricPowerPair:
      return integrate_gl16([this](double z) { return z * density(z); }, zlo,
                            zhi);
    case Family::Tabulated: {
      // Slice at table breakpoints so z*density is quadratic on each slice,
      // which the 16-point rule integrates exactly.
      double acc = 0.0;
      double a = zlo;
      for (std::size_t i = 1; i < tab_z_.size() && a < zhi; ++i) {
        const double cut = std::min(tab_z_[i], zhi);
        if (cut > a) {
          acc += integrate_gl16([this](double z) { return z * density(z); }, a,
                                cut);
          a = cut;
        }
      }
      return acc;
    }
  }
  return 0.0;  // unreachable
}

double kernel_density(const FragmentationKernel& kernel, double z) {
  return kernel.density(z);
}

KernelCheckReport check_kernel(const FragmentationKernel& kernel, int n_quad) {
  if (n_quad < 16)
    throw DomainError("check_kernel: quadrature budget n_quad must be >= 16");

  const auto kappa = [&kernel](double z) { return kernel.density(z); };
  const auto z_kappa = [&kernel](double z) { return z * kernel.density(z); };

  double normalization, first_moment;
  if (kernel.family() == FragmentationKernel::Family::Tabulated) {
    // Panels aligned with the table breakpoints: piecewise-polynomial
    // integrands are then integrated exactly regardless of the budget.
    const auto& zs = kernel.table_z();
    normalization = 0.0;
    first_moment = 0.0;
    for (std::size_t i = 1; i < zs.size(); ++i) {
      normalization += integrate_gl16(kappa, zs[i - 1], zs[i]);
      first_moment += integrate_gl16(z_kappa, zs[i - 1], zs[i]);
    }
  } else {
    const int panels = n_quad / 16;
    normalization = integrate_gl16_composite(kappa, 0.0, 1.0, panels);
    first_moment = integrate_gl16_composite(z_kappa, 0.0, 1.0, panels);
  }

  const int samples = std::max(n_quad, 256);
  double symmetry = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double z = static_cast<double>(i) / samples;
    symmetry = std::max(symmetry,
                        std::abs(kernel.density(z) - kernel.density(1.0 - z)));
  }

  KernelCheckReport rep;
  rep.normalization_residual = std::abs(normalization - 1.0);
  rep.symmetry_residual = symmetry;
  rep.first_moment_residual = std::abs(first_moment - 0.5);
  rep.tolerance = kernel.analytic() ? kKernelTolAnalytic : kKernelTolTabulated;
  rep.pass = rep.normalization_residual <= rep.tolerance &&
             rep.symmetry_residual <= rep.tolerance &&
             rep.first_moment_residual <= rep.tolerance;
  return rep;
}

}  // namespace prionkit
