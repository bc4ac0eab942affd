#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavebench/complexity.hpp"
#include "wavebench/experiment.hpp"

namespace wavebench::bench {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header; CsvError naming the column if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> numbers(const std::string& name) const;
  std::vector<std::string> strings(const std::string& name) const;
};

/// Shortest decimal string that parses back to exactly `v`.
std::string format_number(double v);

/// arch,snr_db,mean_se_bps_hz,std_se,trials
std::string comm_csv(const ExperimentResult& result);
/// arch,snr_db,rmse_deg,crb_deg,trials
std::string sense_csv(const ExperimentResult& result);
/// arch,M,N,K,L,count
std::string complexity_csv(const ComplexityReport& report);

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace wavebench::bench
