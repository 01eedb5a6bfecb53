// prionkit command-line front end.
//
// Subcommands: eigen, scale-check, simulate, fit. Settings come from an
// optional YAML config plus a few direct flags; artifacts land in --out.
//
// Exit codes: 0 success, 2 configuration or validation error, 3 solver
// non-convergence, 4 I/O error, 5 a requested tolerance check failed.
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "prionkit/errors.hpp"

namespace {

using prionkit_cli::Overrides;
using prionkit_cli::RunContext;

struct CliArgs {
  std::optional<std::string> config;
  std::string out_dir = "out";
  std::string format = "table";
  Overrides overrides;
  bool quiet = false;
};

int dispatch(const std::string& name, const CliArgs& args) {
  RunContext ctx;
  ctx.cfg = prionkit_cli::load_config(args.config, args.overrides);
  ctx.out_dir = args.out_dir;
  ctx.object_format = args.format == "object";
  ctx.quiet = args.quiet;

  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec)
    throw prionkit::IoError("cannot create output directory '" + ctx.out_dir +
                            "': " + ec.message());

  if (name == "eigen") return prionkit_cli::cmd_eigen(ctx);
  if (name == "scale-check") return prionkit_cli::cmd_scale_check(ctx);
  if (name == "simulate") return prionkit_cli::cmd_simulate(ctx);
  return prionkit_cli::cmd_fit(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prionkit: aggregation-fragmentation eigenproblems, scaling "
               "checks, simulation, and strain-panel fits"};
  app.require_subcommand(1);

  CliArgs args;
  app.add_option("--config", args.config,
                 "YAML config file (defaults apply when omitted)");
  app.add_option("--out", args.out_dir, "output directory for artifacts")
      ->capture_default_str();
  app.add_option("--format", args.format, "artifact and summary format")
      ->check(CLI::IsMember({"table", "object"}))
      ->capture_default_str();
  app.add_option("--tolerance", args.overrides.tolerance,
                 "override the pass/fail tolerance gates (sweep, rate)");
  app.add_option("--grid-n", args.overrides.grid_n, "override grid size");
  app.add_option("--x-min", args.overrides.x_min, "override smallest size");
  app.add_option("--x-max", args.overrides.x_max, "override largest size");
  app.add_option("--variant", args.overrides.variant,
                 "fit variant: mu0-zero, mu0-free, or both");
  app.add_flag("--quiet", args.quiet, "suppress the stdout summary");

  const char* subcommands[] = {"eigen", "scale-check", "simulate", "fit"};
  const char* descriptions[] = {
      "solve the principal eigenproblem and write the eigenfunction",
      "verify the scale map against direct solves over an intensity sweep",
      "integrate the time-dependent system (optionally against the "
      "eigenpair)",
      "fit the reduced stability-vs-growth model to a strain panel"};
  for (int i = 0; i < 4; ++i)
    app.add_subcommand(subcommands[i], descriptions[i])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help/version exit 0; any command-line mistake is a config error
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return dispatch(name, args);
  } catch (const prionkit::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const prionkit::NumericalAbort& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const prionkit::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const prionkit::Error& e) {
    // ParseError, ValidationError, DomainError: bad configuration or input
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
