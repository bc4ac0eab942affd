#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavebench/comm.hpp"
#include "wavebench/complexity.hpp"
#include "wavebench/sensing.hpp"

namespace wavebench::bench {

enum class Experiment { Comm, Sense, Complexity };

const char* to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& text);

/// Thrown for malformed config text. `line` is 1-based, or 0 when the
/// problem is not tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Keys before the first section header are shared by every experiment.
struct FrontEndSettings {
  int rows = 9;
  int cols = 9;
  double element_spacing_wl = 0.5;
  int rf_chains = 4;
  double feed_spacing_wl = 1.0;
  double feed_distance_wl = 5.0;
  int sim_layers = 3;
  double sim_layer_spacing_wl = 0.5;
  std::string tree_shape = "path";
  bool passive_normalization = true;
  double wavelength = 0.01;
  double reference_impedance = 50.0;

  friend bool operator==(const FrontEndSettings&, const FrontEndSettings&) = default;
};

struct CommSettings {
  std::vector<std::string> archs{"digital", "milac", "hybrid", "bdris_full", "bdris_tree", "sim"};
  std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
  int trials = 200;
  std::string channel = "rician";
  double k_factor_db = 5.0;
  int paths = 4;
  /// Absent (`random`): azimuth drawn per trial within +-user_sector_deg.
  std::optional<double> user_azimuth_deg;
  double user_sector_deg = 60.0;
  int budget = 500;
  int restarts = 4;
  int tree_budget = 20;
  int tree_restarts = 1;

  friend bool operator==(const CommSettings&, const CommSettings&) = default;
};

struct SenseSettings {
  std::vector<std::string> archs{"digital", "milac", "hybrid", "bdris_full", "sim"};
  std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
  int trials = 500;
  double target_azimuth_deg = 20.0;
  int codebook_size = 64;
  double sector_deg = 60.0;
  double grid_resolution_deg = 0.05;
  int budget = 500;
  int restarts = 4;

  friend bool operator==(const SenseSettings&, const SenseSettings&) = default;
};

struct ComplexitySettings {
  std::vector<int> m_values{16, 25, 36, 49, 64, 81, 100, 121, 144, 169, 196, 225, 256};
  int K = 4;
  int L = 3;
  bool asymmetric = true;

  friend bool operator==(const ComplexitySettings&, const ComplexitySettings&) = default;
};

struct BenchConfig {
  Experiment experiment = Experiment::Comm;
  std::uint64_t seed = 1;
  bool plot = false;
  FrontEndSettings front_end;
  CommSettings comm;
  SenseSettings sense;
  ComplexitySettings complexity;

  friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

/// Parses `key = value` text. Unknown keys, malformed values and values
/// violating module preconditions raise ConfigError.
BenchConfig parse_config(const std::string& text);

/// Every key with its resolved value; parse_config(echo_config(c)) == c.
std::string echo_config(const BenchConfig& config);

/// Cross-key checks (array sizes, architecture names) through the core
/// validators.
void validate(const BenchConfig& config);

FrontEndConfig to_front_end_config(const BenchConfig& config);
CarrierConfig to_carrier(const BenchConfig& config);
CommScenario to_comm_scenario(const BenchConfig& config, const FrontEnd& fe);
SensingScenario to_sensing_scenario(const BenchConfig& config, const FrontEnd& fe);

}  // namespace wavebench::bench
