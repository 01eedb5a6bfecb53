#include "prionkit/grid.hpp"

#include <cmath>
#include <sstream>

#include "prionkit/errors.hpp"

namespace prionkit {

SizeGrid make_grid(double x_min, double x_max, std::size_t n) {
  if (!(x_min > 0.0) || !(x_max > x_min)) {
    std::ostringstream os;
    os << "make_grid: need 0 < x_min < x_max, got [" << x_min << ", " << x_max
       << "]";
    throw DomainError(os.str());
  }
  if (n < 32) throw DomainError("make_grid: need at least 32 nodes");

  SizeGrid g;
  g.x.resize(n);
  const double log_lo = std::log(x_min);
  const double log_hi = std::log(x_max);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    g.x[i] = std::exp(log_lo + t * (log_hi - log_lo));
  }
  g.x.front() = x_min;  // endpoints exact, not just up to exp/log roundoff
  g.x.back() = x_max;
  g.ratio = std::exp((log_hi - log_lo) / static_cast<double>(n - 1));

  const std::vector<double> e = cell_edges(g);
  g.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.w[i] = e[i + 1] - e[i];
  return g;
}

std::vector<double> cell_edges(const SizeGrid& grid) {
  const std::size_t n = grid.n();
  std::vector<double> e(n + 1);
  e[0] = grid.x[0];
  for (std::size_t i = 1; i < n; ++i) e[i] = 0.5 * (grid.x[i - 1] + grid.x[i]);
  e[n] = grid.x[n - 1];
  return e;
}

double integrate(const SizeGrid& grid, const std::vector<double>& values) {
  if (values.size() != grid.n())
    throw DomainError("integrate: value count does not match grid size");
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.n(); ++i) acc += grid.w[i] * values[i];
  return acc;
}

}  // namespace prionkit
