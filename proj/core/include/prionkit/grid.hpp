#pragma once

#include <cstddef>
#include <vector>

namespace prionkit {

// Geometric size grid on [x_min, x_max] with trapezoid-consistent quadrature
// weights. The weights are the widths of the dual cells
//   [e_{i}, e_{i+1}],  e_0 = x_0,  e_i = (x_{i-1}+x_i)/2,  e_n = x_{n-1},
// so they sum to x_max - x_min exactly (up to roundoff) and match the
// trapezoid rule on the nonuniform nodes.
struct SizeGrid {
  std::vector<double> x;  // strictly increasing nodes, x.front() > 0
  std::vector<double> w;  // positive quadrature weights (dual cell widths)
  double ratio = 1.0;     // common ratio x[i+1]/x[i]

  std::size_t n() const { return x.size(); }
  double x_min() const { return x.front(); }
  double x_max() const { return x.back(); }
};

// Build a geometric grid. Requires 0 < x_min < x_max and n >= 32.
SizeGrid make_grid(double x_min, double x_max, std::size_t n);

// Dual-cell edges (n+1 values) used by the conservative operators.
std::vector<double> cell_edges(const SizeGrid& grid);

// Quadrature of nodal values: sum_i w_i v_i. Sizes must match.
double integrate(const SizeGrid& grid, const std::vector<double>& values);

}  // namespace prionkit
