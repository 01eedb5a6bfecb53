#pragma once

#include <array>
#include <cstddef>

namespace prionkit {

// 16-point Gauss-Legendre rule, exact for polynomials up to degree 31.
// Positive-half nodes on [-1, 1]; the rule is symmetric about 0.
struct GaussLegendre16 {
  static constexpr std::array<double, 8> nodes = {
      0.095012509837637440185, 0.28160355077925891323,
      0.45801677765722738634,  0.61787624440264374845,
      0.7554044083550030339,   0.86563120238783174388,
      0.94457502307323257608,  0.9894009349916499326};
  static constexpr std::array<double, 8> weights = {
      0.18945061045506849629,  0.18260341504492358887,
      0.16915651939500253819,  0.14959598881657673208,
      0.12462897125553387205,  0.09515851168249278481,
      0.062253523938647892863, 0.027152459411754094852};
};

// Integral of f over [a, b] by a single 16-point Gauss-Legendre panel.
template <typename F>
double integrate_gl16(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    const double d = half * GaussLegendre16::nodes[k];
    acc += GaussLegendre16::weights[k] * (f(mid - d) + f(mid + d));
  }
  return half * acc;
}

// Composite rule: [a, b] split into `panels` equal panels of GL16 each.
template <typename F>
double integrate_gl16_composite(F&& f, double a, double b, int panels) {
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i)
    acc += integrate_gl16(f, a + i * h, a + (i + 1) * h);
  return acc;
}

}  // namespace prionkit
