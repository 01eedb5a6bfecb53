#pragma once

#include <string>

#include "config.hpp"

namespace prionkit_cli {

// Everything a subcommand needs: resolved settings, where to write, and how.
struct RunContext {
  ToolConfig cfg;
  std::string out_dir;
  bool object_format = false;  // JSON artifacts/summary instead of TSV/text
  bool quiet = false;          // suppress the stdout summary
};

// Each returns the process exit code: 0 on success, 5 when a requested
// tolerance gate fails. Validation, solver, and I/O failures are thrown
// and mapped to exit codes by the caller.
int cmd_eigen(const RunContext& ctx);
int cmd_scale_check(const RunContext& ctx);
int cmd_simulate(const RunContext& ctx);
int cmd_fit(const RunContext& ctx);

}  // namespace prionkit_cli
