#include "doctest.h"
#include "prionkit/errors.hpp"
#include "prionkit/grid.hpp"

#include <cmath>
#include <vector>

using namespace prionkit;

TEST_SUITE("grid") {

TEST_CASE("geometric construction with exact endpoints") {
  const SizeGrid g = make_grid(1e-3, 1e3, 512);
  CHECK(g.n() == 512);
  CHECK(g.x.front() == 1e-3);
  CHECK(g.x.back() == 1e3);
  // constant node ratio
  for (std::size_t i = 1; i + 1 < g.n(); ++i) {
    const double ratio = g.x[i + 1] / g.x[i];
    CHECK(std::abs(ratio - g.ratio) <= 1e-12 * g.ratio);
  }
  for (std::size_t i = 1; i < g.n(); ++i) CHECK(g.x[i] > g.x[i - 1]);
}

TEST_CASE("weights are positive and integrate the constant exactly") {
  struct Case {
    double lo, hi;
    std::size_t n;
  };
  for (const Case& c : {Case{1e-4, 50.0, 1024}, Case{1e-3, 1e3, 512},
                        Case{0.5, 2.0, 64}}) {
    const auto [lo, hi, n] = c;
    const SizeGrid g = make_grid(lo, hi, n);
    for (double w : g.w) CHECK(w > 0.0);
    const std::vector<double> ones(g.n(), 1.0);
    const double total = integrate(g, ones);
    CHECK(std::abs(total - (hi - lo)) <= 1e-10 * (hi - lo));
  }
}

TEST_CASE("weights match the trapezoid rule on the nonuniform nodes") {
  const SizeGrid g = make_grid(0.1, 10.0, 128);
  // trapezoid of f: sum over intervals of (f_i + f_{i+1})/2 * dx equals the
  // weighted nodal sum by construction; check on a non-trivial f
  std::vector<double> f(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) f[i] = std::sin(g.x[i]);
  double trap = 0.0;
  for (std::size_t i = 0; i + 1 < g.n(); ++i)
    trap += 0.5 * (f[i] + f[i + 1]) * (g.x[i + 1] - g.x[i]);
  CHECK(integrate(g, f) == doctest::Approx(trap).epsilon(1e-12));
}

TEST_CASE("cell edges nest the nodes and tile the domain") {
  const SizeGrid g = make_grid(1e-2, 30.0, 64);
  const std::vector<double> e = cell_edges(g);
  CHECK(e.size() == g.n() + 1);
  CHECK(e.front() == g.x.front());
  CHECK(e.back() == g.x.back());
  for (std::size_t i = 0; i < g.n(); ++i) {
    CHECK(e[i] <= g.x[i]);
    CHECK(g.x[i] <= e[i + 1]);
    CHECK(g.w[i] == doctest::Approx(e[i + 1] - e[i]).epsilon(1e-15));
  }
}

TEST_CASE("construction rejects bad domains") {
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 64), DomainError);   // empty domain
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 64), DomainError);   // reversed
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 64), DomainError);   // x_min must be > 0
  CHECK_THROWS_AS(make_grid(-1.0, 1.0, 64), DomainError);
  CHECK_THROWS_AS(make_grid(0.1, 1.0, 31), DomainError);   // too few nodes
}

TEST_CASE("integrate validates the value count") {
  const SizeGrid g = make_grid(0.1, 1.0, 32);
  CHECK_THROWS_AS(integrate(g, std::vector<double>(31, 1.0)), DomainError);
}

}  // TEST_SUITE
