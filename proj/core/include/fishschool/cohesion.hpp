#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "fishschool/brownian.hpp"
#include "fishschool/model.hpp"

namespace fishschool {

/// Settings for measuring the critical noise magnitude of a free-space school.
///
/// Each trial seed fixes both the random initial school and one unit Wiener
/// path. The same paths are reused for every sigma on the grid, scaled by
/// sigma, so a sweep over sigma probes one fixed set of noise realisations.
struct CohesionProtocol {
  int n_trials = 20;
  double sigma_step = 0.001;
  double sigma_start = 0.02;
  double sigma_max = 0.2;
  std::vector<std::uint64_t> trial_seeds;
  SchoolingCriteria criteria{0.5, 0.05, 30.0};
  /// Simulated time; schooling is checked on [criteria.t_onset, horizon].
  double horizon = 35.0;
  double dt = 1e-3;
  int record_every = 10;
  /// Side of the initial placement box; <= 0 selects 2 r N^(1/d).
  double box_side = 0.0;
  /// > 0 enables a coarse bracketing pass before the fine scan.
  double coarse_step = 0.0;
  int workers = 1;
};

void validate(const CohesionProtocol& protocol);

/// Seeds 1..n.
std::vector<std::uint64_t> default_trial_seeds(int n);

/// 20 trials, step 0.001, T = 30, theta = 0.05, epsilon = 0.5.
CohesionProtocol full_protocol();

/// 8 trials, step 0.002; otherwise as full_protocol().
CohesionProtocol ci_protocol();

double effective_box_side(const ValidatedParams& params,
                          const CohesionProtocol& protocol);

/// Random placement for a trial (zero velocities).
SwarmState trial_initial_state(const ValidatedParams& params,
                               std::uint64_t seed,
                               const CohesionProtocol& protocol);

/// The unit Wiener increments used by a trial.
BrownianPaths trial_paths(const ValidatedParams& params, std::uint64_t seed,
                          const CohesionProtocol& protocol);

struct TrialOutcome {
  bool schooling = false;
  /// Some sample in [T, horizon] had n_eps >= 2.
  bool broke_connectivity = false;
  /// Some sample in [T, horizon] had sigma_V > theta.
  bool exceeded_theta = false;
  bool blew_up = false;
  bool cancelled = false;
};

/// Runs one trial. With stop_at_violation the run ends at the first failing
/// sample, so only the flag that triggered it is reliable. `cancel` is polled
/// at every sample.
TrialOutcome run_trial(const ValidatedParams& params, double sigma,
                       std::uint64_t seed, const CohesionProtocol& protocol,
                       bool stop_at_violation = true,
                       const std::atomic<bool>* cancel = nullptr);

bool trial_is_schooling(const ValidatedParams& params, double sigma,
                        std::uint64_t seed, const CohesionProtocol& protocol);

/// All trials at one sigma, run to the end of the horizon.
std::vector<TrialOutcome> run_all_trials(const ValidatedParams& params,
                                         double sigma,
                                         const CohesionProtocol& protocol);

struct SigmaLevel {
  double sigma = 0.0;
  bool all_pass = false;
  /// Trials 0..trials_passed-1 passed; when !all_pass trial index
  /// trials_passed is the lowest failing one. Later trials are not run.
  int trials_passed = 0;
};

struct CohesionReport {
  double sigma_bar = 0.0;
  double box_side = 0.0;
  std::vector<SigmaLevel> levels;  // in evaluation order
};

/// Sigma at the grid index k: sigma_start + k * sigma_step.
double sigma_at(const CohesionProtocol& protocol, std::int64_t k);

/// Evaluates every trial at one sigma, stopping at the lowest failing trial.
/// The result does not depend on protocol.workers.
SigmaLevel evaluate_level(const ValidatedParams& params, double sigma,
                          const CohesionProtocol& protocol);

/// Largest grid sigma below the first grid value at which some trial loses
/// schooling. Throws NotSchoolingAtStart when sigma_start already fails and
/// NoBreakBelowMax when no failure occurs up to sigma_max.
CohesionReport estimate_critical_sigma(const ValidatedParams& params,
                                       const CohesionProtocol& protocol);

}  // namespace fishschool
