#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "prionkit/eigensolver.hpp"
#include "prionkit/kernel.hpp"
#include "prionkit/params.hpp"
#include "prionkit/simulator.hpp"

namespace prionkit_cli {

// Values taken from the command line; they override the config file.
struct Overrides {
  std::optional<double> tolerance;
  std::optional<long> grid_n;
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<std::string> variant;
};

// One fully resolved run: the union of every subcommand's settings.
// Defaults suit the normalized eigenproblem; simulate needs grid and dt
// chosen jointly (the step-size check rejects incompatible pairs).
struct ToolConfig {
  prionkit::ModelParams params;
  prionkit::FragmentationKernel kernel = prionkit::FragmentationKernel::uniform();

  std::size_t grid_n = 512;
  double x_min = 1e-4;
  double x_max = 50.0;

  prionkit::SolverOptions solver;

  // scale-check sweep
  std::vector<double> sweep_beta0{0.25, 1.0, 4.0};
  std::vector<double> sweep_vtau{0.25, 1.0, 4.0};
  double sweep_tolerance = 1e-2;

  // simulate
  prionkit::SimMode mode = prionkit::SimMode::FrozenV;
  double v0 = 1.0;
  double t_end = 1.0;
  double dt = 1e-3;
  long output_stride = 1;
  std::string initial = "exponential";  // exponential | gaussian
  double amplitude = 1.0;
  double center = 2.0;
  double width = 0.5;
  bool reference = false;  // also solve the eigenproblem and compare
  double rate_window_lo = std::nan("");
  double rate_window_hi = std::nan("");
  double rate_tolerance = 0.02;

  // fit
  std::string dataset;  // empty -> bundled panel
  std::string variant = "both";
  bool allow_nu_above_one = false;
  long curve_points = 40;
};

// Parses the optional YAML config and applies command-line overrides.
// Missing file -> IoError; malformed or mistyped values -> ParseError
// naming the key.
ToolConfig load_config(const std::optional<std::string>& path,
                       const Overrides& overrides);

// Resolution order for the strain panel: explicit config value, the
// PRIONKIT_DATA environment variable, then the compiled-in default.
std::string resolve_dataset(const ToolConfig& config);

}  // namespace prionkit_cli
