#pragma once

#include <filesystem>
#include <iosfwd>

#include "wavebench/bench/config.hpp"

namespace wavebench::bench {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitUnwritable = 2,
  kExitExperimentFailed = 3,
};

/// Runs the configured experiment and writes <experiment>.csv, the
/// resolved config (config.resolved) and, with plot set, <experiment>.svg
/// into `out_dir`. Diagnostics go to `log`.
int run(const BenchConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace wavebench::bench
