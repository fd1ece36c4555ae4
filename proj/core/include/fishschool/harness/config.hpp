#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishschool/model.hpp"

namespace fishschool::harness {

enum class ExperimentKind {
  kSimulate,
  kPatternRun,
  kSweepExponent,
  kSweepSpeed,
  kSweepCriticalDistance,
  kCohesion,
  kBootstrap,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);

/// Either an explicit list of values or lo..hi in steps.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  std::vector<double> explicit_values;

  /// Grid points lo + k*step for k = 0..floor((hi-lo)/step), rounded to
  /// 1e-9 so decimal steps print cleanly.
  std::vector<double> values() const;
};

struct SolverSpec {
  double dt = 1e-3;
  /// <= 0 selects the experiment's own horizon (encounter_horizon for
  /// obstacle runs, criteria.t_onset + 5 for free-space runs).
  double t_end = 0.0;
  int record_every = 10;
};

/// Initial gap between school centroid and obstacle centre, and the common
/// initial speed along the approach axis.
struct PlacementSpec {
  double gap = 3.5;
  double speed = 1.75;
};

/// How the initial stationary school is prepared.
struct BootstrapSpec {
  double kappa = 5.0;
  double p_exp = 2.0;
  double q_exp = 3.0;
  double t_max = 3000.0;
  double dwell = 1.0;
  /// Settle bound for the relaxation; 0 uses criteria.theta.
  double tolerance = 0.0;
};

struct CohesionSpec {
  int n_trials = 20;
  double sigma_step = 0.001;
  double sigma_start = 0.02;
  double sigma_max = 0.2;
  /// <= 0: criteria.t_onset + 5.
  double horizon = 0.0;
  double coarse_step = 0.0;
  double box_side = 0.0;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSimulate;
  ModelParams model;
  /// For the critical-distance sweep the radius is derived per grid point
  /// (radius_factor * diameter) and `radius` is unused.
  std::optional<Obstacle> obstacle;
  double radius_factor = 2.0 / 3.0;
  SchoolingCriteria criteria;
  std::optional<GridSpec> grid;
  SolverSpec solver;
  std::vector<std::uint64_t> seeds{1};
  std::string output_path = "out";
  PlacementSpec placement;
  BootstrapSpec bootstrap;
  CohesionSpec cohesion;
};

/// Parses a JSON document. Unknown keys and type mismatches raise
/// Error(kConfigError) naming the offending field. A document without a
/// "kind" gets default_kind (simulate when unset).
ExperimentConfig parse_config(
    std::string_view json_text,
    std::optional<ExperimentKind> default_kind = std::nullopt);
ExperimentConfig load_config(
    const std::filesystem::path& path,
    std::optional<ExperimentKind> default_kind = std::nullopt);

/// Canonical JSON (sorted keys, full precision).
std::string dump_config(const ExperimentConfig& config);

/// FNV-1a 64 of dump_config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Cross-field checks (grid ordering, obstacle presence vs kind, parameter
/// validity). Throws Error(kConfigError).
void check(const ExperimentConfig& config);

/// ModelParams with the obstacle force wired to config.obstacle.
ModelParams resolved_model(const ExperimentConfig& config);

/// Default desk-scale and full-resolution grids per sweep kind.
GridSpec default_grid(ExperimentKind kind, bool full);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace fishschool::harness
