#pragma once

#include "prionkit/eigensolver.hpp"
#include "prionkit/params.hpp"

namespace prionkit {

// The homogeneity exponents that map the normalized eigenproblem
// (beta0 = V*tau0 = 1, mu0 = 0) onto arbitrary intensities:
//
//   r    = (V tau0)^{gamma k} beta0^{(1-nu) k} r1 - mu0,
//   U(x) = alpha^k U1(alpha^k x),      alpha = beta0 / (V tau0),
//   xbar = (V tau0 / beta0)^k xbar1,   k = 1 / (1 + gamma - nu).
struct ScalingExponents {
  double k;                // rescaling exponent, > 0 iff well-posed
  double alpha;            // beta0 / (V * tau0)
  double exponent_r_Vtau;  // gamma / (1 + gamma - nu)
  double exponent_r_beta;  // (1 - nu) / (1 + gamma - nu); sums with the
                           // previous one to 1 for every valid (gamma, nu)
};

ScalingExponents scaling_exponents(const ModelParams& params, double V);

// Growth rate at intensities (beta0, V*tau0) from the normalized eigenvalue.
double scale_eigenvalue(double base_r1, const ModelParams& params, double V);

// Rescales a normalized eigenpair onto the physical size axis. The base
// solution must come from the normalized problem with the same (gamma, nu);
// a mismatch is rejected. Node mapping is exact: nodes and weights divide by
// alpha^k, densities multiply by it, so the unit integral is preserved
// bitwise and alpha = 1 returns the base unchanged.
EigenSolution scale_eigenfunction(const EigenSolution& base,
                                  const ModelParams& params, double V);

// xbar = (V tau0 / beta0)^{1/(1+gamma-nu)} * xbar1.
double mean_size_scaled(double x1_bar, const ModelParams& params, double V);

// Affine map from mean polymer size to denaturation stability, G = a*xbar+b.
// The slope must be positive (longer aggregates denature harder).
struct AffineStabilityMap {
  double a = 1.0;  // M per size unit
  double b = 0.0;  // M
};

double stability_from_mean_size(const AffineStabilityMap& map, double x_bar);

}  // namespace prionkit
