#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wavebench/bench/config.hpp"
#include "wavebench/bench/runner.hpp"

namespace bench = wavebench::bench;

int main(int argc, char** argv) {
  CLI::App app{"Transceiver architecture benchmark: communication, sensing and complexity"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool plot = false;
  for (const char* name : {"comm", "sense", "complexity"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "config file (key = value)")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "seed, overrides the config file");
    sub->add_flag("--plot", plot, "also write an SVG plot");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? bench::kExitOk : bench::kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const auto experiment = bench::parse_experiment(chosen->get_name());

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config " << config_path << "\n";
    return bench::kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();

  bench::BenchConfig config;
  try {
    config = bench::parse_config(text.str());
  } catch (const bench::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return bench::kExitUsage;
  }
  // The subcommand selects the experiment even when the file names another.
  config.experiment = *experiment;
  if (chosen->count("--seed") > 0) config.seed = seed;
  if (plot) config.plot = true;
  return bench::run(config, out_dir, std::cerr);
}
