#include "wavebench/bench/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "wavebench/bench/csv.hpp"
#include "wavebench/error.hpp"

namespace wavebench::bench {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

template <typename Seq, typename F>
std::string join(const Seq& items, F&& fmt) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += fmt(item);
  }
  return out;
}

// Typed readers; each throws ConfigError naming the key and line.
struct Reader {
  const std::string& key;
  const std::string& value;
  int line;

  [[noreturn]] void bad(const std::string& expected) const {
    throw ConfigError(line, "key '" + key + "' expects " + expected + ", got '" + value + "'");
  }
  void check(bool ok, const std::string& what) const {
    if (!ok) throw ConfigError(line, "key '" + key + "' " + what);
  }

  int integer(int min) const {
    int v = 0;
    if (!parse_number(value, v)) bad("an integer");
    check(v >= min, "must be >= " + std::to_string(min));
    return v;
  }
  std::uint64_t unsigned_integer() const {
    std::uint64_t v = 0;
    if (!parse_number(value, v)) bad("a non-negative integer");
    return v;
  }
  double real() const {
    double v = 0.0;
    if (!parse_number(value, v) || !std::isfinite(v)) bad("a finite number");
    return v;
  }
  double positive() const {
    const double v = real();
    check(v > 0.0, "must be > 0");
    return v;
  }
  bool boolean() const {
    if (value == "true") return true;
    if (value == "false") return false;
    bad("true or false");
  }
  std::string choice(std::initializer_list<const char*> options) const {
    for (const char* o : options) {
      if (value == o) return value;
    }
    std::string list;
    for (const char* o : options) list += std::string(list.empty() ? "" : "|") + o;
    bad(list);
  }
  std::vector<double> increasing_reals() const {
    std::vector<double> out;
    for (const auto& item : split_list(value)) {
      double v = 0.0;
      if (!parse_number(item, v) || !std::isfinite(v)) bad("a comma-separated list of numbers");
      out.push_back(v);
    }
    check(!out.empty(), "must not be empty");
    for (std::size_t i = 1; i < out.size(); ++i) {
      check(out[i] > out[i - 1], "must be strictly increasing");
    }
    return out;
  }
  std::vector<int> increasing_ints(int min) const {
    std::vector<int> out;
    for (const auto& item : split_list(value)) {
      int v = 0;
      if (!parse_number(item, v)) bad("a comma-separated list of integers");
      check(v >= min, "entries must be >= " + std::to_string(min));
      out.push_back(v);
    }
    check(!out.empty(), "must not be empty");
    for (std::size_t i = 1; i < out.size(); ++i) {
      check(out[i] > out[i - 1], "must be strictly increasing");
    }
    return out;
  }
  std::vector<std::string> names(const std::set<std::string>& allowed) const {
    std::vector<std::string> out = split_list(value);
    check(!out.empty(), "must not be empty");
    std::set<std::string> seen;
    for (const auto& name : out) {
      check(allowed.count(name) == 1, "has unknown architecture '" + name + "'");
      check(seen.insert(name).second, "lists '" + name + "' twice");
    }
    return out;
  }
};

const std::set<std::string> kCommArchs{"digital", "milac", "hybrid", "bdris_full", "bdris_tree",
                                       "sim"};

struct Key {
  std::function<void(BenchConfig&, const Reader&)> set;
  std::function<std::string(const BenchConfig&)> get;
};

using Section = std::vector<std::pair<std::string, Key>>;

const std::vector<std::pair<std::string, Section>>& schema() {
  static const std::vector<std::pair<std::string, Section>> sections = [] {
    std::vector<std::pair<std::string, Section>> out;
    const auto i = [](int v) { return std::to_string(v); };
    const auto d = [](double v) { return format_number(v); };
    const auto b = [](bool v) { return std::string(v ? "true" : "false"); };

    out.push_back({"", {
        {"experiment", {[](BenchConfig& c, const Reader& r) {
                          c.experiment = *parse_experiment(r.choice({"comm", "sense", "complexity"}));
                        },
                        [](const BenchConfig& c) { return std::string(to_string(c.experiment)); }}},
        {"seed", {[](BenchConfig& c, const Reader& r) { c.seed = r.unsigned_integer(); },
                  [](const BenchConfig& c) { return std::to_string(c.seed); }}},
        {"plot", {[](BenchConfig& c, const Reader& r) { c.plot = r.boolean(); },
                  [b](const BenchConfig& c) { return b(c.plot); }}},
        {"rows", {[](BenchConfig& c, const Reader& r) { c.front_end.rows = r.integer(1); },
                  [i](const BenchConfig& c) { return i(c.front_end.rows); }}},
        {"cols", {[](BenchConfig& c, const Reader& r) { c.front_end.cols = r.integer(1); },
                  [i](const BenchConfig& c) { return i(c.front_end.cols); }}},
        {"element_spacing_wl",
         {[](BenchConfig& c, const Reader& r) { c.front_end.element_spacing_wl = r.positive(); },
          [d](const BenchConfig& c) { return d(c.front_end.element_spacing_wl); }}},
        {"rf_chains", {[](BenchConfig& c, const Reader& r) { c.front_end.rf_chains = r.integer(1); },
                       [i](const BenchConfig& c) { return i(c.front_end.rf_chains); }}},
        {"feed_spacing_wl",
         {[](BenchConfig& c, const Reader& r) { c.front_end.feed_spacing_wl = r.positive(); },
          [d](const BenchConfig& c) { return d(c.front_end.feed_spacing_wl); }}},
        {"feed_distance_wl",
         {[](BenchConfig& c, const Reader& r) { c.front_end.feed_distance_wl = r.positive(); },
          [d](const BenchConfig& c) { return d(c.front_end.feed_distance_wl); }}},
        {"sim_layers", {[](BenchConfig& c, const Reader& r) { c.front_end.sim_layers = r.integer(1); },
                        [i](const BenchConfig& c) { return i(c.front_end.sim_layers); }}},
        {"sim_layer_spacing_wl",
         {[](BenchConfig& c, const Reader& r) { c.front_end.sim_layer_spacing_wl = r.positive(); },
          [d](const BenchConfig& c) { return d(c.front_end.sim_layer_spacing_wl); }}},
        {"tree_shape",
         {[](BenchConfig& c, const Reader& r) { c.front_end.tree_shape = r.choice({"path", "star"}); },
          [](const BenchConfig& c) { return c.front_end.tree_shape; }}},
        {"passive_normalization",
         {[](BenchConfig& c, const Reader& r) { c.front_end.passive_normalization = r.boolean(); },
          [b](const BenchConfig& c) { return b(c.front_end.passive_normalization); }}},
        {"wavelength", {[](BenchConfig& c, const Reader& r) { c.front_end.wavelength = r.positive(); },
                        [d](const BenchConfig& c) { return d(c.front_end.wavelength); }}},
        {"reference_impedance",
         {[](BenchConfig& c, const Reader& r) { c.front_end.reference_impedance = r.positive(); },
          [d](const BenchConfig& c) { return d(c.front_end.reference_impedance); }}},
    }});

    const auto reals = [](const std::vector<double>& v) {
      return join(v, [](double x) { return format_number(x); });
    };
    const auto strings = [](const std::vector<std::string>& v) {
      return join(v, [](const std::string& x) { return x; });
    };

    out.push_back({"comm", {
        {"archs", {[](BenchConfig& c, const Reader& r) { c.comm.archs = r.names(kCommArchs); },
                   [strings](const BenchConfig& c) { return strings(c.comm.archs); }}},
        {"snr_db", {[](BenchConfig& c, const Reader& r) { c.comm.snr_db = r.increasing_reals(); },
                    [reals](const BenchConfig& c) { return reals(c.comm.snr_db); }}},
        {"trials", {[](BenchConfig& c, const Reader& r) { c.comm.trials = r.integer(1); },
                    [i](const BenchConfig& c) { return i(c.comm.trials); }}},
        {"channel", {[](BenchConfig& c, const Reader& r) { c.comm.channel = r.choice({"rician", "los"}); },
                     [](const BenchConfig& c) { return c.comm.channel; }}},
        {"k_factor_db", {[](BenchConfig& c, const Reader& r) { c.comm.k_factor_db = r.real(); },
                         [d](const BenchConfig& c) { return d(c.comm.k_factor_db); }}},
        {"paths", {[](BenchConfig& c, const Reader& r) { c.comm.paths = r.integer(0); },
                   [i](const BenchConfig& c) { return i(c.comm.paths); }}},
        {"user_azimuth_deg",
         {[](BenchConfig& c, const Reader& r) {
            if (r.value == "random") {
              c.comm.user_azimuth_deg.reset();
              return;
            }
            const double v = r.real();
            r.check(std::abs(v) < 90.0, "must lie in (-90, 90)");
            c.comm.user_azimuth_deg = v;
          },
          [d](const BenchConfig& c) {
            return c.comm.user_azimuth_deg ? d(*c.comm.user_azimuth_deg) : std::string("random");
          }}},
        {"user_sector_deg",
         {[](BenchConfig& c, const Reader& r) {
            const double v = r.real();
            r.check(v >= 0.0 && v <= 90.0, "must lie in [0, 90]");
            c.comm.user_sector_deg = v;
          },
          [d](const BenchConfig& c) { return d(c.comm.user_sector_deg); }}},
        {"budget", {[](BenchConfig& c, const Reader& r) { c.comm.budget = r.integer(1); },
                    [i](const BenchConfig& c) { return i(c.comm.budget); }}},
        {"restarts", {[](BenchConfig& c, const Reader& r) { c.comm.restarts = r.integer(1); },
                      [i](const BenchConfig& c) { return i(c.comm.restarts); }}},
        {"tree_budget", {[](BenchConfig& c, const Reader& r) { c.comm.tree_budget = r.integer(1); },
                         [i](const BenchConfig& c) { return i(c.comm.tree_budget); }}},
        {"tree_restarts",
         {[](BenchConfig& c, const Reader& r) { c.comm.tree_restarts = r.integer(1); },
          [i](const BenchConfig& c) { return i(c.comm.tree_restarts); }}},
    }});

    out.push_back({"sense", {
        {"archs", {[](BenchConfig& c, const Reader& r) { c.sense.archs = r.names(kCommArchs); },
                   [strings](const BenchConfig& c) { return strings(c.sense.archs); }}},
        {"snr_db", {[](BenchConfig& c, const Reader& r) { c.sense.snr_db = r.increasing_reals(); },
                    [reals](const BenchConfig& c) { return reals(c.sense.snr_db); }}},
        {"trials", {[](BenchConfig& c, const Reader& r) { c.sense.trials = r.integer(1); },
                    [i](const BenchConfig& c) { return i(c.sense.trials); }}},
        {"target_azimuth_deg",
         {[](BenchConfig& c, const Reader& r) {
            const double v = r.real();
            r.check(std::abs(v) < 90.0, "must lie in (-90, 90)");
            c.sense.target_azimuth_deg = v;
          },
          [d](const BenchConfig& c) { return d(c.sense.target_azimuth_deg); }}},
        {"codebook_size",
         {[](BenchConfig& c, const Reader& r) { c.sense.codebook_size = r.integer(2); },
          [i](const BenchConfig& c) { return i(c.sense.codebook_size); }}},
        {"sector_deg",
         {[](BenchConfig& c, const Reader& r) {
            const double v = r.real();
            r.check(v > 0.0 && v < 90.0, "must lie in (0, 90)");
            c.sense.sector_deg = v;
          },
          [d](const BenchConfig& c) { return d(c.sense.sector_deg); }}},
        {"grid_resolution_deg",
         {[](BenchConfig& c, const Reader& r) { c.sense.grid_resolution_deg = r.positive(); },
          [d](const BenchConfig& c) { return d(c.sense.grid_resolution_deg); }}},
        {"budget", {[](BenchConfig& c, const Reader& r) { c.sense.budget = r.integer(1); },
                    [i](const BenchConfig& c) { return i(c.sense.budget); }}},
        {"restarts", {[](BenchConfig& c, const Reader& r) { c.sense.restarts = r.integer(1); },
                      [i](const BenchConfig& c) { return i(c.sense.restarts); }}},
    }});

    out.push_back({"complexity", {
        {"m_values",
         {[](BenchConfig& c, const Reader& r) { c.complexity.m_values = r.increasing_ints(1); },
          [](const BenchConfig& c) {
            return join(c.complexity.m_values, [](int x) { return std::to_string(x); });
          }}},
        {"K", {[](BenchConfig& c, const Reader& r) { c.complexity.K = r.integer(1); },
               [i](const BenchConfig& c) { return i(c.complexity.K); }}},
        {"L", {[](BenchConfig& c, const Reader& r) { c.complexity.L = r.integer(1); },
               [i](const BenchConfig& c) { return i(c.complexity.L); }}},
        {"asymmetric", {[](BenchConfig& c, const Reader& r) { c.complexity.asymmetric = r.boolean(); },
                        [b](const BenchConfig& c) { return b(c.complexity.asymmetric); }}},
    }});
    return out;
  }();
  return sections;
}

const Key* find_key(const std::string& section, const std::string& key) {
  for (const auto& [name, keys] : schema()) {
    if (name != section) continue;
    for (const auto& [k, entry] : keys) {
      if (k == key) return &entry;
    }
  }
  return nullptr;
}

bool known_section(const std::string& section) {
  for (const auto& [name, keys] : schema()) {
    if (name == section) return true;
  }
  return false;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Comm:
      return "comm";
    case Experiment::Sense:
      return "sense";
    case Experiment::Complexity:
      return "complexity";
  }
  return "comm";
}

std::optional<Experiment> parse_experiment(const std::string& text) {
  if (text == "comm") return Experiment::Comm;
  if (text == "sense") return Experiment::Sense;
  if (text == "complexity") return Experiment::Complexity;
  return std::nullopt;
}

BenchConfig parse_config(const std::string& text) {
  BenchConfig config;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ConfigError(line, "malformed section header '" + content + "'");
      section = trim(content.substr(1, content.size() - 2));
      if (section.empty() || !known_section(section)) {
        throw ConfigError(line, "unknown section '" + section + "'");
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value', got '" + content + "'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    const std::string qualified = section.empty() ? key : section + "." + key;
    const Key* entry = find_key(section, key);
    if (entry == nullptr) throw ConfigError(line, "unknown key '" + qualified + "'");
    if (!seen.insert(qualified).second) throw ConfigError(line, "duplicate key '" + qualified + "'");
    entry->set(config, Reader{key, value, line});
  }
  try {
    validate(config);
  } catch (const Error& e) {
    throw ConfigError(0, e.what());
  }
  return config;
}

std::string echo_config(const BenchConfig& config) {
  std::string out;
  for (const auto& [section, keys] : schema()) {
    if (!section.empty()) out += "\n[" + section + "]\n";
    for (const auto& [key, entry] : keys) out += key + " = " + entry.get(config) + "\n";
  }
  return out;
}

FrontEndConfig to_front_end_config(const BenchConfig& config) {
  const FrontEndSettings& s = config.front_end;
  FrontEndConfig fe;
  fe.rows = s.rows;
  fe.cols = s.cols;
  fe.element_spacing_wl = s.element_spacing_wl;
  fe.rf_chains = s.rf_chains;
  fe.feed_spacing_wl = s.feed_spacing_wl;
  fe.feed_distance_wl = s.feed_distance_wl;
  fe.sim_layers = s.sim_layers;
  fe.sim_layer_spacing_wl = s.sim_layer_spacing_wl;
  fe.tree_shape = s.tree_shape == "star" ? TreeShape::Star : TreeShape::Path;
  fe.passive_normalization = s.passive_normalization;
  return fe;
}

CarrierConfig to_carrier(const BenchConfig& config) {
  CarrierConfig carrier;
  carrier.wavelength = config.front_end.wavelength;
  carrier.reference_impedance = config.front_end.reference_impedance;
  return carrier;
}

namespace {

std::vector<ArchitectureSpec> pick(const std::vector<std::string>& names, const FrontEnd& fe) {
  const auto available = fe.architectures();
  std::vector<ArchitectureSpec> out;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& spec : available) {
      if (spec.name() == name) {
        out.push_back(spec);
        found = true;
      }
    }
    require(found, "architecture '" + name + "' is not available");
  }
  return out;
}

}  // namespace

CommScenario to_comm_scenario(const BenchConfig& config, const FrontEnd& fe) {
  const CommSettings& s = config.comm;
  CommScenario out;
  out.front_end = fe.config;
  out.carrier = fe.carrier;
  out.specs = pick(s.archs, fe);
  out.snr_grid_db = s.snr_db;
  out.trials = s.trials;
  out.seed = config.seed;
  if (s.channel == "los") {
    out.channel = LineOfSight{};
  } else {
    out.channel = Rician{std::pow(10.0, s.k_factor_db / 10.0), s.paths};
  }
  if (s.user_azimuth_deg) out.user_direction = Direction{deg_to_rad(*s.user_azimuth_deg), 0.0};
  out.user_sector = deg_to_rad(s.user_sector_deg);
  out.optimizer.budget = s.budget;
  out.optimizer.restarts = s.restarts;
  out.tree_optimizer.budget = s.tree_budget;
  out.tree_optimizer.restarts = s.tree_restarts;
  return out;
}

SensingScenario to_sensing_scenario(const BenchConfig& config, const FrontEnd& fe) {
  const SenseSettings& s = config.sense;
  SensingScenario out;
  out.front_end = fe.config;
  out.carrier = fe.carrier;
  out.specs = pick(s.archs, fe);
  out.target.aod = Direction{deg_to_rad(s.target_azimuth_deg), 0.0};
  out.codebook_size = s.codebook_size;
  out.sector = deg_to_rad(s.sector_deg);
  out.snr_grid_db = s.snr_db;
  out.trials = s.trials;
  out.seed = config.seed;
  out.grid_resolution = deg_to_rad(s.grid_resolution_deg);
  out.optimizer.budget = s.budget;
  out.optimizer.restarts = s.restarts;
  return out;
}

void validate(const BenchConfig& config) {
  to_front_end_config(config).validate();
  to_carrier(config).validate();
  if (config.comm.channel == "rician") {
    wavebench::validate(ChannelModel{Rician{std::pow(10.0, config.comm.k_factor_db / 10.0),
                                            config.comm.paths}});
  }
  require(config.sense.target_azimuth_deg >= -config.sense.sector_deg &&
              config.sense.target_azimuth_deg <= config.sense.sector_deg,
          "sense target azimuth must lie inside the sweep sector");
  require(config.sense.grid_resolution_deg < 2.0 * config.sense.sector_deg,
          "sense grid resolution must be finer than the sector");
}

}  // namespace wavebench::bench
