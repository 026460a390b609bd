// Experiment runner: loads a config file, runs the requested experiment and
// writes its CSV/JSON artifacts. Exit codes: 0 success, 2 config error,
// 3 algorithm-contract violation (non-monotonic run), 1 anything else.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "zac/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"zero-area constrained quantum control experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  run_cmd->add_option("config", config_path, "config file (key = value with [sections])")
      ->required();
  run_cmd->add_option("--override", overrides,
                      "override a config entry, section.key=value (repeatable)");
  run_cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");

  CLI11_PARSE(app, argc, argv);

  try {
    zac::RunConfig cfg = zac::RunConfig::load(config_path, overrides);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    const zac::ExperimentResult result = zac::run_experiment(cfg);
    if (!result.contract_ok) {
      std::cerr << "contract violation: non-monotonic run, see output flags\n";
      return 3;
    }
    return 0;
  } catch (const zac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
