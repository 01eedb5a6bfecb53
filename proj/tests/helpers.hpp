#pragma once

#include <random>

namespace testhelpers {

// Deterministic uniform numbers for property-style tests: raw mt19937 draws
// scaled by hand so the stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    const double u = gen_() * (1.0 / 4294967296.0);
    return lo + u * (hi - lo);
  }

 private:
  std::mt19937 gen_;
};

}  // namespace testhelpers
