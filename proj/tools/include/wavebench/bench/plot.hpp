#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wavebench/bench/csv.hpp"

namespace wavebench::bench {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

/// Static SVG line plot, one polyline per series. Non-positive points are
/// dropped on a log axis.
std::string render_svg(const PlotSpec& plot);

/// Plot description for a CSV produced by the bench runner, chosen from
/// its header. CsvError names the first missing column.
PlotSpec plot_for(const CsvTable& table);

/// Writes <stem>.svg next to every CSV and returns the written paths.
std::vector<std::filesystem::path> render_plots(const std::vector<std::filesystem::path>& csvs);

}  // namespace wavebench::bench
