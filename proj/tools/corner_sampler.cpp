#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "cornersampler/commands.hpp"

using namespace cornersampler;

namespace {

struct Subcommand {
  const char *description;
  bool needs_config;
  int (*run)(const CommandOptions &);
};

} // namespace

int main(int argc, char **argv) {
  const std::map<std::string, Subcommand> commands{
      {"validate", {"Run every module invariant suite", false, cmd_validate}},
      {"simulate", {"Synthesise the far-field data of the configured source", true, cmd_simulate}},
      {"operator", {"Write the far-field operator of one test disk", true, cmd_operator}},
      {"indicate", {"Indicator map over the configured test-disk family", true, cmd_indicate}},
      {"reconstruct", {"Indicator map, classification and support mask", true, cmd_reconstruct}},
      {"spectrum", {"Picard terms for one test disk", true, cmd_spectrum}},
  };

  CLI::App app{"Source-support reconstruction from one far-field pattern"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config, out, data, disk;
  std::uint64_t seed = 0;
  for (const auto &[name, sub] : commands) {
    CLI::App *c = app.add_subcommand(name, sub.description);
    c->add_option("--config", config, "JSON run configuration");
    c->add_option("--out", out, "Output directory (default: paths.output_dir)");
    c->add_option("--threads", opts.threads, "Worker threads for disk sweeps")
        ->check(CLI::PositiveNumber);
    c->add_option("--seed", seed, "Override noise.seed");
    if (name == "indicate" || name == "reconstruct" || name == "spectrum")
      c->add_option("--data", data, "fffile far-field data (default: simulate from config)");
    if (name == "operator" || name == "spectrum")
      c->add_option("--disk", disk, "Test disk as cx,cy,rho");
    if (name == "validate")
      c->add_option("--inject-wronskian", opts.inject_wronskian,
                    "Self-test: perturb the Wronskian residual by this amount")
          ->group("");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App *chosen = app.get_subcommands().front();
  const Subcommand &sub = commands.at(chosen->get_name());
  if (!config.empty())
    opts.config = config;
  if (!out.empty())
    opts.out = out;
  if (!data.empty())
    opts.data = data;
  if (!disk.empty())
    opts.disk = disk;
  if (chosen->count("--seed"))
    opts.seed = seed;

  if (sub.needs_config) {
    if (!opts.config) {
      std::cerr << "error: --config is required\n" << chosen->help();
      return kExitUsage;
    }
    if (!std::filesystem::exists(*opts.config)) {
      std::cerr << "error: config file not found: " << opts.config->string() << "\n";
      return kExitUsage;
    }
  }

  try {
    return sub.run(opts);
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
