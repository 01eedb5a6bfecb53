#include "prionkit/params.hpp"

#include <cmath>
#include <sstream>

#include "prionkit/errors.hpp"

namespace prionkit {

namespace {

void require_positive_size(double x, const char* who) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << who << ": size must be positive, got " << x;
    throw DomainError(os.str());
  }
}

ParamCheck check(std::string name, bool ok, std::string detail_when_bad) {
  return ParamCheck{std::move(name), ok, ok ? "" : std::move(detail_when_bad)};
}

}  // namespace

double rate_beta(const ModelParams& p, double x) {
  require_positive_size(x, "rate_beta");
  return p.beta0 * std::pow(x, p.gamma);
}

double rate_tau(const ModelParams& p, double x) {
  require_positive_size(x, "rate_tau");
  return p.tau0 * std::pow(x, p.nu);
}

ValidationReport validate_params(const ModelParams& p) {
  ValidationReport rep;
  auto num = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  rep.checks.push_back(
      check("tau0 > 0", p.tau0 > 0.0, "tau0 = " + num(p.tau0)));
  rep.checks.push_back(
      check("beta0 > 0", p.beta0 > 0.0, "beta0 = " + num(p.beta0)));
  rep.checks.push_back(
      check("lambda > 0", p.lambda > 0.0, "lambda = " + num(p.lambda)));
  rep.checks.push_back(
      check("delta > 0", p.delta > 0.0, "delta = " + num(p.delta)));
  rep.checks.push_back(check("mu0 >= 0", p.mu0 >= 0.0, "mu0 = " + num(p.mu0)));
  rep.checks.push_back(
      check("gamma >= 0", p.gamma >= 0.0, "gamma = " + num(p.gamma)));
  rep.checks.push_back(check(
      "gamma + 1 - nu > 0", p.gamma + 1.0 - p.nu > 0.0,
      "gamma + 1 - nu = " + num(p.gamma + 1.0 - p.nu) +
          " (growth must not outrun fragmentation for the eigenproblem to be "
          "well posed)"));
  return rep;
}

double steady_monomer(const ModelParams& p) {
  if (!(p.delta > 0.0)) throw DomainError("steady_monomer: delta must be > 0");
  return p.lambda / p.delta;
}

}  // namespace prionkit
