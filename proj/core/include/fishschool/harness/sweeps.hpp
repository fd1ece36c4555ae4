#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fishschool/harness/bootstrap_cache.hpp"
#include "fishschool/harness/config.hpp"
#include "fishschool/harness/serialize.hpp"
#include "fishschool/patterns.hpp"
#include "fishschool/sde.hpp"

namespace fishschool::harness {

/// Relaxation parameters for the stationary school that precedes an
/// encounter: the config's N, d, alpha, beta with the bootstrap exponents,
/// the given critical distance and drag -kappa v.
ValidatedParams bootstrap_params(const ExperimentConfig& config,
                                 double r_crit);

RelaxOptions bootstrap_options(const ExperimentConfig& config);

struct Encounter {
  SwarmState initial;
  Trajectory trajectory;
  TrajectorySummary summary;
  PatternLabel label = PatternLabel::kUnclassified;
};

/// Places `school` in front of the obstacle, integrates (noise-free unless
/// params carry sigma > 0, in which case `seed` drives the Wiener path) and
/// classifies the result. t_end <= 0 selects encounter_horizon(gap, speed).
Encounter run_encounter(const SwarmState& school,
                        const ValidatedParams& params,
                        const PlacementSpec& placement,
                        const SchoolingCriteria& criteria,
                        const SolverSpec& solver, std::uint64_t seed = 1);

/// The config's single encounter (kind pattern_run).
Encounter pattern_run(const ExperimentConfig& config, BootstrapCache& cache);

/// Midpoints between consecutive grid values with different labels.
std::vector<double> transition_boundaries(const std::vector<double>& values,
                                          const std::vector<PatternLabel>& labels);

/// p on the grid, q = p + 1, obstacle exponents P = p, Q = q.
SweepReport sweep_exponent(const ExperimentConfig& config,
                           const std::vector<double>& grid,
                           BootstrapCache& cache, int workers = 1);

/// Initial speed on the grid.
SweepReport sweep_speed(const ExperimentConfig& config,
                        const std::vector<double>& grid,
                        BootstrapCache& cache, int workers = 1);

/// r on the grid with epsilon = R = r; each point relaxes its own school and
/// sizes the obstacle as radius_factor * diameter.
SweepReport sweep_critical_distance(const ExperimentConfig& config,
                                    const std::vector<double>& grid,
                                    BootstrapCache& cache, int workers = 1);

/// Reading of a label sequence against an expected order of patterns.
struct StaircaseCheck {
  /// Ranks never decrease along the grid (Unclassified/BlowUp skipped).
  bool monotone = false;
  /// Every pattern of the order occurs.
  bool complete = false;
  /// Grid points labelled Unclassified or BlowUp, or outside the order.
  int anomalies = 0;
  /// boundaries[k]: midpoint between the last point ranked <= k and the
  /// next point ranked > k. Only meaningful when monotone.
  std::vector<double> boundaries;
};

StaircaseCheck check_staircase(const std::vector<double>& values,
                               const std::vector<PatternLabel>& labels,
                               const std::vector<PatternLabel>& order);

}  // namespace fishschool::harness
