#include "wavebench/bench/runner.hpp"

#include <fstream>
#include <ostream>
#include <system_error>

#include "wavebench/bench/csv.hpp"
#include "wavebench/bench/plot.hpp"
#include "wavebench/comm.hpp"
#include "wavebench/complexity.hpp"
#include "wavebench/error.hpp"
#include "wavebench/sensing.hpp"

namespace wavebench::bench {

namespace {

bool writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir, ec)) return false;
  const auto probe = dir / ".wavebench-write-probe";
  {
    std::ofstream out(probe, std::ios::binary);
    if (!out || !(out << 'x') || !out.flush()) return false;
  }
  std::filesystem::remove(probe, ec);
  return true;
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.flush();
  return static_cast<bool>(out);
}

std::string experiment_csv(const BenchConfig& config) {
  switch (config.experiment) {
    case Experiment::Comm: {
      const FrontEnd fe = build_front_end(to_front_end_config(config), to_carrier(config));
      return comm_csv(run_comm_experiment(to_comm_scenario(config, fe), fe));
    }
    case Experiment::Sense: {
      const FrontEnd fe = build_front_end(to_front_end_config(config), to_carrier(config));
      return sense_csv(run_sensing_experiment(to_sensing_scenario(config, fe), fe));
    }
    case Experiment::Complexity: {
      ComplexityTemplate tmpl;
      tmpl.K = config.complexity.K;
      tmpl.L = config.complexity.L;
      tmpl.include_asymmetric = config.complexity.asymmetric;
      return complexity_csv(complexity_sweep(tmpl, config.complexity.m_values));
    }
  }
  return {};
}

}  // namespace

int run(const BenchConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  if (!writable_dir(out_dir)) {
    log << "error: output directory " << out_dir << " is not writable\n";
    return kExitUnwritable;
  }
  std::string csv;
  try {
    csv = experiment_csv(config);
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ExperimentFailed ? kExitExperimentFailed : kExitUsage;
  }
  const auto csv_path = out_dir / (std::string(to_string(config.experiment)) + ".csv");
  if (!write_file(csv_path, csv) || !write_file(out_dir / "config.resolved", echo_config(config))) {
    log << "error: cannot write into " << out_dir << "\n";
    return kExitUnwritable;
  }
  if (config.plot) {
    try {
      render_plots({csv_path});
    } catch (const CsvError& e) {
      log << "error: " << e.what() << "\n";
      return kExitUnwritable;
    }
  }
  return kExitOk;
}

}  // namespace wavebench::bench
