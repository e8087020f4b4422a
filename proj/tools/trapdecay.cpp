// Command-line front end: simulate | sweep | phases.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trapdecay/commands.hpp"
#include "trapdecay/config.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "key = value configuration file");
  auto forward = [cmd, &flags](const std::string& flag, const std::string& key,
                               const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
  };
  forward("--t-max", "t_max", "end of the time grid, units of 1/gamma0");
  forward("--samples", "samples", "number of grid points");
  forward("--output", "output", "output path (default stdout)");
  forward("--format", "format", "csv or json");
  forward("--threshold", "threshold", "phase threshold as a fraction of gamma0");
  forward("--sweep-param", "sweep_param", "omega_bar or gamma_side");
  forward("--sweep-values", "sweep_values", "comma separated values");
  forward("--probe-time", "probe_time", "time at which the sweep summary is taken");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population trapping in a drive-dressed upper-state multiplet"};
  app.require_subcommand(1);

  Flags flags;
  auto* simulate = app.add_subcommand("simulate", "per-level and total populations");
  auto* sweep = app.add_subcommand("sweep", "sweep omega_bar or the side decay rates");
  auto* phases = app.add_subcommand("phases", "burst / quiescent phase report");
  for (auto* cmd : {simulate, sweep, phases}) add_common_flags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!flags.config_path.empty()) {
    std::ifstream file(flags.config_path);
    if (!file) {
      std::cerr << "error: cannot read " << flags.config_path << '\n';
      return trapdecay::kExitIoError;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }

  trapdecay::RunConfig config;
  try {
    config = trapdecay::parse_config(text, flags.overrides);
  } catch (const trapdecay::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return trapdecay::exit_status_for(e.code());
  }

  if (simulate->parsed()) return trapdecay::cmd_simulate(config, std::cout, std::cerr);
  if (sweep->parsed()) return trapdecay::cmd_sweep(config, std::cout, std::cerr);
  return trapdecay::cmd_phases(config, std::cout, std::cerr);
}
