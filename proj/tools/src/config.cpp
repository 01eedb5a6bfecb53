#include "config.hpp"

#include <cstdlib>
#include <filesystem>

#include <yaml-cpp/yaml.h>

#include "prionkit/errors.hpp"

namespace prionkit_cli {

namespace {

using prionkit::ParseError;

// yaml-cpp throws its own hierarchy; translate to ParseError with the key
// path so a bad config names the offending entry.
template <typename T>
T get(const YAML::Node& node, const char* section, const char* key,
      const T& fallback) {
  const YAML::Node value = node[key];
  if (!value) return fallback;
  try {
    return value.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(std::string("config: ") + section + "." + key +
                     " has the wrong type");
  }
}

std::vector<double> get_list(const YAML::Node& node, const char* section,
                             const char* key,
                             const std::vector<double>& fallback) {
  const YAML::Node value = node[key];
  if (!value) return fallback;
  try {
    return value.as<std::vector<double>>();
  } catch (const YAML::Exception&) {
    throw ParseError(std::string("config: ") + section + "." + key +
                     " must be a list of numbers");
  }
}

prionkit::FragmentationKernel parse_kernel(const YAML::Node& node) {
  if (!node) return prionkit::FragmentationKernel::uniform();
  const std::string family = get<std::string>(node, "kernel", "family", "uniform");
  if (family == "uniform") return prionkit::FragmentationKernel::uniform();
  if (family == "symmetric-power-pair")
    return prionkit::FragmentationKernel::symmetric_power_pair(
        get<double>(node, "kernel", "power", 1.0));
  if (family == "tabulated")
    return prionkit::FragmentationKernel::tabulated(
        get_list(node, "kernel", "z", {}),
        get_list(node, "kernel", "density", {}));
  throw ParseError("config: kernel.family must be uniform, "
                   "symmetric-power-pair, or tabulated (got '" +
                   family + "')");
}

void parse_params(const YAML::Node& node, prionkit::ModelParams& p) {
  if (!node) return;
  p.tau0 = get(node, "params", "tau0", p.tau0);
  p.nu = get(node, "params", "nu", p.nu);
  p.beta0 = get(node, "params", "beta0", p.beta0);
  p.gamma = get(node, "params", "gamma", p.gamma);
  p.mu0 = get(node, "params", "mu0", p.mu0);
  p.lambda = get(node, "params", "lambda", p.lambda);
  p.delta = get(node, "params", "delta", p.delta);
}

}  // namespace

ToolConfig load_config(const std::optional<std::string>& path,
                       const Overrides& overrides) {
  ToolConfig cfg;

  if (path) {
    if (!std::filesystem::exists(*path))
      throw prionkit::IoError("config file not found: " + *path);
    YAML::Node root;
    try {
      root = YAML::LoadFile(*path);
    } catch (const YAML::Exception& e) {
      throw ParseError("config: cannot parse " + *path + ": " + e.what());
    }

    parse_params(root["params"], cfg.params);
    cfg.kernel = parse_kernel(root["kernel"]);

    if (const YAML::Node g = root["grid"]) {
      cfg.grid_n = get<std::size_t>(g, "grid", "n", cfg.grid_n);
      cfg.x_min = get(g, "grid", "x_min", cfg.x_min);
      cfg.x_max = get(g, "grid", "x_max", cfg.x_max);
    }
    if (const YAML::Node s = root["solver"]) {
      cfg.solver.tol = get(s, "solver", "tolerance", cfg.solver.tol);
      cfg.solver.max_iter =
          get<int>(s, "solver", "max_iterations", cfg.solver.max_iter);
    }
    if (const YAML::Node s = root["sweep"]) {
      cfg.sweep_beta0 = get_list(s, "sweep", "beta0", cfg.sweep_beta0);
      cfg.sweep_vtau = get_list(s, "sweep", "vtau", cfg.sweep_vtau);
      cfg.sweep_tolerance = get(s, "sweep", "tolerance", cfg.sweep_tolerance);
    }
    if (const YAML::Node s = root["sim"]) {
      const std::string mode = get<std::string>(s, "sim", "mode", "frozen-v");
      if (mode == "frozen-v") cfg.mode = prionkit::SimMode::FrozenV;
      else if (mode == "full-nonlinear") cfg.mode = prionkit::SimMode::FullNonlinear;
      else
        throw ParseError(
            "config: sim.mode must be frozen-v or full-nonlinear (got '" +
            mode + "')");
      cfg.v0 = get(s, "sim", "v0", cfg.v0);
      cfg.t_end = get(s, "sim", "t_end", cfg.t_end);
      cfg.dt = get(s, "sim", "dt", cfg.dt);
      cfg.output_stride = get(s, "sim", "output_stride", cfg.output_stride);
      cfg.initial = get<std::string>(s, "sim", "initial", cfg.initial);
      if (cfg.initial != "exponential" && cfg.initial != "gaussian")
        throw ParseError(
            "config: sim.initial must be exponential or gaussian (got '" +
            cfg.initial + "')");
      cfg.amplitude = get(s, "sim", "amplitude", cfg.amplitude);
      cfg.center = get(s, "sim", "center", cfg.center);
      cfg.width = get(s, "sim", "width", cfg.width);
      cfg.reference = get(s, "sim", "reference", cfg.reference);
      const std::vector<double> window =
          get_list(s, "sim", "rate_window", {});
      if (!window.empty()) {
        if (window.size() != 2)
          throw ParseError("config: sim.rate_window must be [t_lo, t_hi]");
        cfg.rate_window_lo = window[0];
        cfg.rate_window_hi = window[1];
      }
      cfg.rate_tolerance = get(s, "sim", "rate_tolerance", cfg.rate_tolerance);
    }
    if (const YAML::Node f = root["fit"]) {
      cfg.dataset = get<std::string>(f, "fit", "dataset", cfg.dataset);
      cfg.variant = get<std::string>(f, "fit", "variant", cfg.variant);
      cfg.allow_nu_above_one =
          get(f, "fit", "allow_nu_above_one", cfg.allow_nu_above_one);
      cfg.curve_points = get(f, "fit", "curve_points", cfg.curve_points);
    }
  }

  if (overrides.tolerance) {
    // overrides the pass/fail gates only; the solver's internal tolerance
    // stays at its configured precision
    cfg.sweep_tolerance = *overrides.tolerance;
    cfg.rate_tolerance = *overrides.tolerance;
  }
  if (overrides.grid_n) {
    if (*overrides.grid_n < 1)
      throw ParseError("config: --grid-n must be positive");
    cfg.grid_n = static_cast<std::size_t>(*overrides.grid_n);
  }
  if (overrides.x_min) cfg.x_min = *overrides.x_min;
  if (overrides.x_max) cfg.x_max = *overrides.x_max;
  if (overrides.variant) cfg.variant = *overrides.variant;

  if (cfg.variant != "mu0-zero" && cfg.variant != "mu0-free" &&
      cfg.variant != "both")
    throw ParseError("config: variant must be mu0-zero, mu0-free, or both "
                     "(got '" + cfg.variant + "')");
  return cfg;
}

std::string resolve_dataset(const ToolConfig& config) {
  if (!config.dataset.empty()) return config.dataset;
  if (const char* env = std::getenv("PRIONKIT_DATA")) return env;
  return PRIONKIT_DEFAULT_DATA;
}

}  // namespace prionkit_cli
