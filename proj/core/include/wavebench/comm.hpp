#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wavebench/experiment.hpp"
#include "wavebench/front_end.hpp"

namespace wavebench {

/// log2(1 + snr |gain|^2).
double spectral_efficiency(Complex gain, double snr_linear);

struct CommScenario {
  FrontEndConfig front_end;
  CarrierConfig carrier;
  /// Empty selects every architecture the front end hosts.
  std::vector<ArchitectureSpec> specs;
  std::vector<double> snr_grid_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
  int trials = 200;
  std::uint64_t seed = 1;
  ChannelModel channel = Rician{};
  /// Fixed user direction; when absent the azimuth is drawn uniformly in
  /// [-user_sector, user_sector] each trial (elevation 0).
  std::optional<Direction> user_direction;
  double user_sector = deg_to_rad(60.0);
  OptimizerOptions optimizer;
  /// Budget for the tree-connected BD-RIS (full coordinate sweeps).
  OptimizerOptions tree_optimizer{20, 1, 0};

  void validate() const;
};

/// Per-trial outcome: gains[i] belongs to the i-th selected spec.
struct CommTrial {
  std::vector<double> gains;
  bool failed = false;
};

std::vector<ArchitectureSpec> selected_specs(const CommScenario& scenario, const FrontEnd& fe);

/// Every trial draws one channel realization and configures every
/// architecture on it. Trial t uses generator streams derived from
/// (seed, t) only.
std::vector<CommTrial> run_comm_trials(const CommScenario& scenario, const FrontEnd& fe);

/// Mean/std spectral efficiency per (architecture, SNR). Failed trials are
/// excluded and counted; more than 5% failures throws ExperimentFailed.
ExperimentResult run_comm_experiment(const CommScenario& scenario);
ExperimentResult run_comm_experiment(const CommScenario& scenario, const FrontEnd& fe);

}  // namespace wavebench
