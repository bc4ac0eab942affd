#include "wavebench/bench/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wavebench/types.hpp"

namespace wavebench::bench {

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw CsvError("missing column '" + name + "'");
}

std::vector<double> CsvTable::numbers(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const std::string& cell = row[c];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw CsvError("column '" + name + "' has non-numeric value '" + cell + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> CsvTable::strings(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

std::string comm_csv(const ExperimentResult& result) {
  std::string out = "arch,snr_db,mean_se_bps_hz,std_se,trials\n";
  for (const auto& r : result.rows) {
    out += r.architecture + ',' + format_number(r.snr_db) + ',' + format_number(r.mean) + ',' +
           format_number(r.spread) + ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

std::string sense_csv(const ExperimentResult& result) {
  std::string out = "arch,snr_db,rmse_deg,crb_deg,trials\n";
  for (const auto& r : result.rows) {
    out += r.architecture + ',' + format_number(r.snr_db) + ',' +
           format_number(rad_to_deg(r.mean)) + ',' + format_number(rad_to_deg(r.bound)) + ',' +
           std::to_string(r.trials) + '\n';
  }
  return out;
}

std::string complexity_csv(const ComplexityReport& report) {
  std::string out = "arch,M,N,K,L,count\n";
  for (const auto& r : report.rows) {
    out += r.architecture + ',' + std::to_string(r.M) + ',' + std::to_string(r.N) + ',' +
           std::to_string(r.K) + ',' + std::to_string(r.L) + ',' + std::to_string(r.count) + '\n';
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw CsvError("row " + std::to_string(number) + " has " + std::to_string(cells.size()) +
                     " fields, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw CsvError("missing header row");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace wavebench::bench
