#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace prionkit {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A function was called outside its stated preconditions (bad argument value,
// non-normalized density, empty window, ...).
struct DomainError : Error {
  using Error::Error;
};

// A parameter set, kernel, grid or run configuration failed validation.
struct ValidationError : Error {
  using Error::Error;
};

// Malformed input data (dataset rows, tabulated kernels, config values).
struct ParseError : Error {
  using Error::Error;
};

// Filesystem-level failure: missing file, unwritable output directory.
struct IoError : Error {
  using Error::Error;
};

// A time integration had to abort mid-run (density went negative beyond
// roundoff, monomer level left its admissible range).
struct NumericalAbort : Error {
  using Error::Error;
};

// An iterative solver ran out of iterations. Carries the best iterate seen so
// that callers can inspect how far the solve got.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what_arg, int iterations_done,
                   double last_estimate, double last_residual,
                   std::vector<double> last_iterate_arg)
      : Error(what_arg),
        iterations(iterations_done),
        estimate(last_estimate),
        residual(last_residual),
        last_iterate(std::move(last_iterate_arg)) {}

  int iterations;
  double estimate;
  double residual;
  std::vector<double> last_iterate;
};

}  // namespace prionkit
