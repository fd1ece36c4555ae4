// fishschool: command-line front end for the experiment harness.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fishschool/harness/run.hpp"

namespace {

using fishschool::harness::ExperimentKind;
using fishschool::harness::RunOptions;

struct CommonFlags {
  std::string config;
  std::string out;
  int workers = 1;
  bool full = false;
  bool csv = false;
  std::uint64_t seed = 0;
  double dt = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config, "Experiment config (JSON)")
      ->required();
  cmd->add_option("--out", flags.out, "Output directory");
  cmd->add_option("--workers", flags.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--full", flags.full, "Full-resolution sweep grids");
  cmd->add_flag("--csv", flags.csv, "Also write trajectory.csv");
  cmd->add_option("--seed", flags.seed, "Override the config's seed");
  cmd->add_option("--dt", flags.dt, "Override the solver time step")
      ->check(CLI::PositiveNumber);
}

RunOptions to_options(const CommonFlags& flags, const CLI::App* cmd) {
  RunOptions options;
  options.out_dir = flags.out;
  options.workers = flags.workers;
  options.full = flags.full;
  options.csv = flags.csv;
  if (cmd->count("--seed") > 0) options.seed = flags.seed;
  if (cmd->count("--dt") > 0) options.dt = flags.dt;
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = fishschool::harness;
  CLI::App app{"Schooling simulations with obstacle avoidance"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string sweep_kind;
  std::string input;

  auto* simulate = app.add_subcommand("simulate", "Run one trajectory");
  add_common(simulate, flags);
  auto* bootstrap =
      app.add_subcommand("bootstrap", "Relax a stationary school");
  add_common(bootstrap, flags);
  auto* classify =
      app.add_subcommand("classify", "Label a recorded encounter");
  add_common(classify, flags);
  classify->add_option("--input", input, "trajectory.jsonl to classify")
      ->required();
  auto* sweep = app.add_subcommand("sweep", "One-parameter pattern sweep");
  sweep->add_option("parameter", sweep_kind, "exponent | speed | rcrit")
      ->required()
      ->check(CLI::IsMember({"exponent", "speed", "rcrit"}));
  add_common(sweep, flags);
  auto* cohesion =
      app.add_subcommand("cohesion", "Estimate the critical noise level");
  add_common(cohesion, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : h::kExitConfig;
  }

  if (simulate->parsed()) {
    return h::run_file(flags.config, to_options(flags, simulate),
                       {ExperimentKind::kSimulate, ExperimentKind::kPatternRun});
  }
  if (bootstrap->parsed()) {
    return h::run_file(flags.config, to_options(flags, bootstrap),
                       {ExperimentKind::kBootstrap});
  }
  if (cohesion->parsed()) {
    return h::run_file(flags.config, to_options(flags, cohesion),
                       {ExperimentKind::kCohesion});
  }
  if (sweep->parsed()) {
    const ExperimentKind kind =
        sweep_kind == "exponent" ? ExperimentKind::kSweepExponent
        : sweep_kind == "speed"  ? ExperimentKind::kSweepSpeed
                                 : ExperimentKind::kSweepCriticalDistance;
    return h::run_file(flags.config, to_options(flags, sweep), {kind});
  }
  try {
    const auto config = h::load_config(flags.config);
    return h::classify_file(config, input, to_options(flags, classify));
  } catch (const fishschool::Error& e) {
    std::cerr << e.what() << '\n';
    return h::exit_code_for(e.code());
  }
}
