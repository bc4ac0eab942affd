#include "wavebench/comm.hpp"

#include <cmath>
#include <string>

#include "wavebench/error.hpp"
#include "wavebench/parallel.hpp"
#include "wavebench/random.hpp"

namespace wavebench {

Moments moments(const std::vector<double>& values) {
  Moments out;
  if (values.empty()) return out;
  const auto n = values.size();
  out.mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - out.mean) * (values[i] - out.mean);
    out.stddev = std::sqrt(pairwise_sum(sq.data(), n) / static_cast<double>(n - 1));
  }
  return out;
}

double spectral_efficiency(Complex gain, double snr_linear) {
  require(snr_linear >= 0.0, "snr must be >= 0");
  return std::log2(1.0 + snr_linear * std::norm(gain));
}

void CommScenario::validate() const {
  front_end.validate();
  carrier.validate();
  wavebench::validate(channel);
  require(trials >= 1, "trials must be >= 1");
  require(!snr_grid_db.empty(), "snr grid must be non-empty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
    require(snr_grid_db[i] > snr_grid_db[i - 1], "snr grid must be strictly increasing");
  }
  require(user_sector >= 0.0 && user_sector <= kPi / 2, "user sector must lie in [0, pi/2]");
  if (user_direction) user_direction->validate();
  for (const auto& s : specs) s.validate();
}

std::vector<ArchitectureSpec> selected_specs(const CommScenario& scenario, const FrontEnd& fe) {
  return scenario.specs.empty() ? fe.architectures() : scenario.specs;
}

std::vector<CommTrial> run_comm_trials(const CommScenario& scenario, const FrontEnd& fe) {
  scenario.validate();
  const auto specs = selected_specs(scenario, fe);
  std::vector<CommTrial> trials(static_cast<std::size_t>(scenario.trials));
  parallel_for(trials.size(), [&](std::size_t t) {
    const auto trial_index = static_cast<std::uint64_t>(t);
    Rng rng = make_rng(scenario.seed, {0x636f6dULL, trial_index});
    const Direction dir = scenario.user_direction.value_or(
        Direction{uniform(rng, -scenario.user_sector, scenario.user_sector), 0.0});
    const std::uint64_t channel_seed = rng();
    CommTrial& out = trials[t];
    try {
      const UserChannel h =
          user_channel(fe.aperture, dir, fe.carrier, scenario.channel, channel_seed);
      out.gains.reserve(specs.size());
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const bool tree = specs[i].kind == ArchitectureKind::Bdris &&
                          specs[i].topology == BdrisTopology::Tree;
        OptimizerOptions options = tree ? scenario.tree_optimizer : scenario.optimizer;
        options.seed = mix_seed(scenario.seed ^ mix_seed(trial_index * 64 + i));
        out.gains.push_back(configure_for_user(specs[i], fe, h.gains, options).gain);
      }
    } catch (const Error&) {
      out.failed = true;
      out.gains.clear();
    }
  });
  return trials;
}

ExperimentResult run_comm_experiment(const CommScenario& scenario) {
  return run_comm_experiment(scenario, build_front_end(scenario.front_end, scenario.carrier));
}

ExperimentResult run_comm_experiment(const CommScenario& scenario, const FrontEnd& fe) {
  const auto specs = selected_specs(scenario, fe);
  const auto trials = run_comm_trials(scenario, fe);
  ExperimentResult result;
  result.attempted_trials = static_cast<int>(trials.size());
  for (const auto& t : trials) result.failed_trials += t.failed ? 1 : 0;
  if (result.failed_trials * 20 > result.attempted_trials) {
    fail(ErrorCode::ExperimentFailed, std::to_string(result.failed_trials) + " of " +
                                          std::to_string(result.attempted_trials) +
                                          " trials failed (limit 5%)");
  }
  const int used = result.attempted_trials - result.failed_trials;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const double snr_db : scenario.snr_grid_db) {
      const double snr = std::pow(10.0, snr_db / 10.0);
      std::vector<double> se;
      se.reserve(trials.size());
      for (const auto& t : trials) {
        if (!t.failed) se.push_back(spectral_efficiency(t.gains[i], snr));
      }
      const Moments mo = moments(se);
      result.rows.push_back(ResultRow{specs[i].name(), snr_db, mo.mean, mo.stddev, used});
    }
  }
  return result;
}

}  // namespace wavebench
