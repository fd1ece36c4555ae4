#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fishschool/cohesion.hpp"
#include "fishschool/error.hpp"
#include "fishschool/harness/config.hpp"

namespace fishschool::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code);

struct RunOptions {
  /// Empty: config.output_path.
  std::filesystem::path out_dir;
  int workers = 1;
  bool full = false;
  bool csv = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
};

/// Applies --seed / --dt overrides and re-checks the result.
ExperimentConfig apply_overrides(ExperimentConfig config,
                                 const RunOptions& options);

/// Cohesion settings of a config. Trial seeds are config.seeds when there
/// are exactly n_trials of them, otherwise seeds[0], seeds[0]+1, ...
CohesionProtocol cohesion_protocol(const ExperimentConfig& config,
                                   int workers = 1);

/// Runs one experiment and writes its artifacts into the output directory:
///   simulate     trajectory.jsonl (+ .csv), summary.json
///   pattern_run  trajectory.jsonl (+ .csv), summary.json
///   sweep_*      report.json
///   cohesion     report.json
///   bootstrap    bootstrap.json
/// On failure writes error.json (when the directory is usable) and returns
/// the matching exit code; the error record also goes to stderr.
int run(const ExperimentConfig& config, const RunOptions& options);

/// Classifies a recorded trajectory (JSON lines) against the config's
/// obstacle and criteria and writes classification.json.
int classify_file(const ExperimentConfig& config,
                  const std::filesystem::path& input,
                  const RunOptions& options);

/// Loads a config file, then run(). Config errors map to exit code 2, as
/// does a kind outside `accepted` (when non-empty).
int run_file(const std::filesystem::path& config_path,
             const RunOptions& options,
             const std::vector<ExperimentKind>& accepted = {});

}  // namespace fishschool::harness
