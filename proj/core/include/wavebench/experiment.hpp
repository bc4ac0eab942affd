#pragma once

#include <limits>
#include <string>
#include <vector>

namespace wavebench {

struct ResultRow {
  std::string architecture;
  double snr_db = 0.0;
  double mean = 0.0;
  double spread = 0.0;
  int trials = 0;
  /// Sensing only: sqrt(CRB) in radians.
  double bound = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  int attempted_trials = 0;
  int failed_trials = 0;
};

/// Mean and sample standard deviation (0 for a single value).
struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};
Moments moments(const std::vector<double>& values);

}  // namespace wavebench
