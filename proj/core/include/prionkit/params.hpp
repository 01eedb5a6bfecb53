#pragma once

#include <string>
#include <vector>

namespace prionkit {

// All rate constants and exponents of the aggregation-fragmentation model.
//
// Polymers of size x polymerize at speed V(t)*tau(x) with tau(x) = tau0*x^nu
// and fragment at rate beta(x) = beta0*x^gamma. Monomers are produced at rate
// lambda and degraded at rate delta; polymers die at rate mu0. Size is in
// monomer-equivalent units, time in days, concentrations in molar.
struct ModelParams {
  double tau0 = 1.0;    // polymerization intensity
  double nu = 0.0;      // polymerization exponent (may be negative)
  double beta0 = 1.0;   // fragmentation intensity
  double gamma = 1.0;   // fragmentation exponent (>= 0)
  double mu0 = 0.0;     // polymer death rate (1/day)
  double lambda = 1.0;  // monomer production (M/day)
  double delta = 1.0;   // monomer degradation (1/day)
};

// One line of a validation report: which invariant, did it hold, and why not.
struct ParamCheck {
  std::string name;
  bool ok;
  std::string detail;
};

struct ValidationReport {
  std::vector<ParamCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

// beta(x) = beta0 * x^gamma. Requires x > 0.
double rate_beta(const ModelParams& p, double x);

// tau(x) = tau0 * x^nu. Requires x > 0 (nu may be negative).
double rate_tau(const ModelParams& p, double x);

// Checks every parameter invariant and reports each one separately:
// positivity of the intensities and of lambda/delta, mu0 >= 0, gamma >= 0,
// and the well-posedness condition gamma + 1 - nu > 0.
ValidationReport validate_params(const ModelParams& p);

// Steady monomer level lambda / delta of the disease-free state.
double steady_monomer(const ModelParams& p);

}  // namespace prionkit
