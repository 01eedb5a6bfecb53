#include "prionkit/scaling.hpp"

#include <cmath>
#include <sstream>

#include "prionkit/errors.hpp"

namespace prionkit {

namespace {

void require_valid(const ModelParams& params, double V, const char* who) {
  if (!(V > 0.0)) {
    std::ostringstream os;
    os << who << ": monomer level V must be positive, got " << V;
    throw DomainError(os.str());
  }
  const ValidationReport rep = validate_params(params);
  if (!rep.pass()) {
    std::ostringstream os;
    os << who << ": invalid parameters:";
    for (const auto& c : rep.checks)
      if (!c.ok) os << " [" << c.name << ": " << c.detail << "]";
    throw ValidationError(os.str());
  }
}

}  // namespace

ScalingExponents scaling_exponents(const ModelParams& params, double V) {
  require_valid(params, V, "scaling_exponents");
  const double denom = 1.0 + params.gamma - params.nu;
  ScalingExponents s;
  s.k = 1.0 / denom;
  s.alpha = params.beta0 / (V * params.tau0);
  s.exponent_r_Vtau = params.gamma / denom;
  s.exponent_r_beta = (1.0 - params.nu) / denom;
  return s;
}

double scale_eigenvalue(double base_r1, const ModelParams& params, double V) {
  const ScalingExponents s = scaling_exponents(params, V);
  return std::pow(V * params.tau0, s.exponent_r_Vtau) *
             std::pow(params.beta0, s.exponent_r_beta) * base_r1 -
         params.mu0;
}

EigenSolution scale_eigenfunction(const EigenSolution& base,
                                  const ModelParams& params, double V) {
  if (base.gamma != params.gamma || base.nu != params.nu) {
    std::ostringstream os;
    os << "scale_eigenfunction: exponent mismatch; base solved with gamma="
       << base.gamma << " nu=" << base.nu << ", parameters have gamma="
       << params.gamma << " nu=" << params.nu;
    throw DomainError(os.str());
  }
  const ScalingExponents s = scaling_exponents(params, V);
  const double factor = std::pow(s.alpha, s.k);  // alpha^k; 1 when alpha == 1

  EigenSolution scaled = base;
  for (std::size_t i = 0; i < scaled.grid.n(); ++i) {
    scaled.grid.x[i] = base.grid.x[i] / factor;
    scaled.grid.w[i] = base.grid.w[i] / factor;
  }
  scaled.density = base.density * factor;
  scaled.mean_size = base.mean_size / factor;
  scaled.eigenvalue = scale_eigenvalue(base.eigenvalue, params, V);
  return scaled;
}

double mean_size_scaled(double x1_bar, const ModelParams& params, double V) {
  const ScalingExponents s = scaling_exponents(params, V);
  return std::pow(V * params.tau0 / params.beta0, s.k) * x1_bar;
}

double stability_from_mean_size(const AffineStabilityMap& map, double x_bar) {
  if (!(map.a > 0.0))
    throw ValidationError("stability_from_mean_size: slope a must be > 0");
  if (!(x_bar > 0.0))
    throw DomainError("stability_from_mean_size: mean size must be > 0");
  return map.a * x_bar + map.b;
}

}  // namespace prionkit
