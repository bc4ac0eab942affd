#include "wavebench/bench/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

namespace wavebench::bench {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Points grouped by arch, in first-appearance order.
std::vector<Series> group(const CsvTable& table, const std::string& x_col, const std::string& y_col,
                          const std::string& suffix, bool dashed) {
  const auto arch = table.strings("arch");
  const auto x = table.numbers(x_col);
  const auto y = table.numbers(y_col);
  std::vector<Series> out;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < arch.size(); ++r) {
    auto [it, inserted] = index.emplace(arch[r], out.size());
    if (inserted) out.push_back({arch[r] + suffix, {}, {}, dashed});
    out[it->second].x.push_back(x[r]);
    out[it->second].y.push_back(y[r]);
  }
  return out;
}

PlotSpec comm_plot(const CsvTable& t) {
  return {"Spectral efficiency", "SNR [dB]", "SE [bit/s/Hz]", false,
          group(t, "snr_db", "mean_se_bps_hz", "", false)};
}

PlotSpec sense_plot(const CsvTable& t) {
  PlotSpec p{"AoD estimation", "SNR [dB]", "RMSE [deg]", true,
             group(t, "snr_db", "rmse_deg", "", false)};
  for (auto& s : group(t, "snr_db", "crb_deg", " CRB", true)) p.series.push_back(std::move(s));
  return p;
}

PlotSpec complexity_plot(const CsvTable& t) {
  return {"Circuit complexity", "M", "tunable components", true, group(t, "M", "count", "", false)};
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  auto keep = [&](double y) { return std::isfinite(y) && (!plot.log_y || y > 0.0); };
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!keep(s.y[i]) || !std::isfinite(s.x[i])) continue;
      const double y = plot.log_y ? std::log10(s.y[i]) : s.y[i];
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0;
    x_max = 1;
    y_min = 0;
    y_max = 1;
  }
  if (plot.log_y) {
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);
  }
  if (x_max <= x_min) x_max = x_min + 1;
  if (y_max <= y_min) y_max = y_min + 1;
  if (!plot.log_y) {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) {
    const double v = plot.log_y ? std::log10(y) : y;
    return kTop + ph - (v - y_min) / (y_max - y_min) * ph;
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" " +
         "font-family=\"sans-serif\" font-size=\"15\">" + escape(plot.title) + "</text>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x_min + (x_max - x_min) * i / kTicks;
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + ph + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           tick_label(xv) + "</text>\n";
  }
  if (plot.log_y) {
    for (double e = y_min; e <= y_max + 0.5; e += 1.0) {
      const double yv = std::pow(10.0, e);
      svg += "<line x1=\"" + num(kLeft) + "\" x2=\"" + num(kLeft + pw) + "\" y1=\"" + num(py(yv)) +
             "\" y2=\"" + num(py(yv)) + "\" stroke=\"#dddddd\"/>\n";
      svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
             tick_label(yv) + "</text>\n";
    }
  } else {
    for (int i = 0; i <= kTicks; ++i) {
      const double yv = y_min + (y_max - y_min) * i / kTicks;
      svg += "<line x1=\"" + num(kLeft) + "\" x2=\"" + num(kLeft + pw) + "\" y1=\"" + num(py(yv)) +
             "\" y2=\"" + num(py(yv)) + "\" stroke=\"#dddddd\"/>\n";
      svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(yv) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
             tick_label(yv) + "</text>\n";
    }
  }
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         escape(plot.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + num(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         escape(plot.y_label) + "</text>\n";

  // Dashed series reuse the colour of the solid series with the same prefix.
  std::map<std::string, std::size_t> colour;
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const Series& s = plot.series[k];
    std::string base = s.label;
    if (s.dashed) base = base.substr(0, base.find(' '));
    const auto [it, inserted] = colour.emplace(base, colour.size());
    const char* stroke = kPalette[it->second % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!keep(s.y[i]) || !std::isfinite(s.x[i])) continue;
      if (!points.empty()) points += ' ';
      points += num(px(s.x[i])) + "," + num(py(s.y[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1.5\"";
    if (s.dashed) svg += " stroke-dasharray=\"5,3\"";
    svg += " points=\"" + points + "\"><title>" + escape(s.label) + "</title></polyline>\n";
    const double ly = kTop + 14 + 16.0 * static_cast<double>(k);
    svg += "<line x1=\"" + num(kLeft + pw + 10) + "\" x2=\"" + num(kLeft + pw + 30) + "\" y1=\"" +
           num(ly - 4) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + stroke + "\"" +
           (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
    svg += "<text x=\"" + num(kLeft + pw + 34) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

PlotSpec plot_for(const CsvTable& table) {
  auto has = [&](const char* name) {
    return std::find(table.header.begin(), table.header.end(), name) != table.header.end();
  };
  if (has("mean_se_bps_hz")) return comm_plot(table);
  if (has("rmse_deg") || has("crb_deg")) return sense_plot(table);
  if (has("count")) return complexity_plot(table);
  throw CsvError("missing column 'mean_se_bps_hz', 'rmse_deg' or 'count'");
}

std::vector<std::filesystem::path> render_plots(const std::vector<std::filesystem::path>& csvs) {
  std::vector<std::filesystem::path> written;
  for (const auto& csv : csvs) {
    const CsvTable table = read_csv(csv);
    const std::string stem = csv.stem().string();
    PlotSpec plot;
    if (stem == "comm") {
      plot = comm_plot(table);
    } else if (stem == "sense") {
      plot = sense_plot(table);
    } else if (stem == "complexity") {
      plot = complexity_plot(table);
    } else {
      plot = plot_for(table);
    }
    auto out = csv;
    out.replace_extension(".svg");
    std::ofstream file(out, std::ios::binary);
    if (!file) throw CsvError("cannot write " + out.string());
    file << render_svg(plot);
    written.push_back(out);
  }
  return written;
}

}  // namespace wavebench::bench
