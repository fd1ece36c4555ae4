#include "fishschool/cohesion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fishschool/error.hpp"
#include "fishschool/metrics.hpp"
#include "fishschool/parallel.hpp"
#include "fishschool/sde.hpp"

namespace fishschool {
namespace {

constexpr std::uint64_t kPlacementStream = 0;
constexpr std::uint64_t kWienerStream = 1;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidParams, what);
}

std::int64_t last_grid_index(const CohesionProtocol& protocol) {
  return static_cast<std::int64_t>(std::floor(
      (protocol.sigma_max - protocol.sigma_start) / protocol.sigma_step +
      1e-9));
}

}  // namespace

void validate(const CohesionProtocol& protocol) {
  if (protocol.n_trials < 1) invalid("n_trials>=1 violated");
  if (!(protocol.sigma_step > 0.0)) invalid("sigma_step>0 violated");
  if (!(protocol.sigma_start >= 0.0)) invalid("sigma_start>=0 violated");
  if (!(protocol.sigma_max >= protocol.sigma_start)) {
    invalid("sigma_max>=sigma_start violated");
  }
  if (static_cast<int>(protocol.trial_seeds.size()) != protocol.n_trials) {
    invalid("trial_seeds must hold n_trials entries");
  }
  const std::set<std::uint64_t> distinct(protocol.trial_seeds.begin(),
                                         protocol.trial_seeds.end());
  if (distinct.size() != protocol.trial_seeds.size()) {
    invalid("trial_seeds must be distinct");
  }
  validate(protocol.criteria);
  if (!(protocol.horizon >= protocol.criteria.t_onset)) {
    invalid("horizon>=t_onset violated");
  }
  if (!(protocol.dt > 0.0)) invalid("dt>0 violated");
  if (protocol.record_every < 1) invalid("record_every>=1 violated");
  if (protocol.coarse_step < 0.0) invalid("coarse_step>=0 violated");
}

std::vector<std::uint64_t> default_trial_seeds(int n) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(std::max(0, n)));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
  return seeds;
}

CohesionProtocol full_protocol() {
  CohesionProtocol p;
  p.trial_seeds = default_trial_seeds(p.n_trials);
  return p;
}

CohesionProtocol ci_protocol() {
  CohesionProtocol p;
  p.n_trials = 8;
  p.sigma_step = 0.002;
  p.trial_seeds = default_trial_seeds(p.n_trials);
  return p;
}

double effective_box_side(const ValidatedParams& params,
                          const CohesionProtocol& protocol) {
  if (protocol.box_side > 0.0) return protocol.box_side;
  return 2.0 * params->r_crit *
         std::pow(static_cast<double>(params->n_agents), 1.0 / params->dim);
}

SwarmState trial_initial_state(const ValidatedParams& params,
                               std::uint64_t seed,
                               const CohesionProtocol& protocol) {
  return random_school(params->dim, params->n_agents,
                       effective_box_side(params, protocol),
                       0.5 * params->r_crit,
                       mix_seed(seed, kPlacementStream));
}

BrownianPaths trial_paths(const ValidatedParams& params, std::uint64_t seed,
                          const CohesionProtocol& protocol) {
  BrownianPaths paths;
  paths.seed = mix_seed(seed, kWienerStream);
  paths.n_agents = params->n_agents;
  paths.dim = params->dim;
  paths.n_steps = step_count(protocol.horizon, protocol.dt);
  return paths;
}

TrialOutcome run_trial(const ValidatedParams& params, double sigma,
                       std::uint64_t seed, const CohesionProtocol& protocol,
                       bool stop_at_violation,
                       const std::atomic<bool>* cancel) {
  const ValidatedParams noisy = params.with_sigma(sigma);
  const SwarmState initial = trial_initial_state(noisy, seed, protocol);
  BrownianStream noise(trial_paths(noisy, seed, protocol));

  SimulationOptions options;
  options.dt = protocol.dt;
  options.t_end = protocol.horizon;
  options.record_every = protocol.record_every;

  TrialOutcome out;
  const SchoolingCriteria& criteria = protocol.criteria;
  const RunResult run =
      integrate(initial, noisy, noise, options, [&](const SwarmState& s) {
        if (cancel != nullptr && cancel->load(std::memory_order_relaxed)) {
          out.cancelled = true;
          return false;
        }
        if (s.time < criteria.t_onset - kTimeSlack) return true;
        if (epsilon_components(s, criteria.epsilon) != 1) {
          out.broke_connectivity = true;
        }
        if (sigma_v(s) > criteria.theta) out.exceeded_theta = true;
        const bool violated = out.broke_connectivity || out.exceeded_theta;
        return !(violated && stop_at_violation);
      });
  out.blew_up = !completed(run.termination);
  out.schooling = !out.cancelled && !out.blew_up &&
                  !out.broke_connectivity && !out.exceeded_theta;
  return out;
}

bool trial_is_schooling(const ValidatedParams& params, double sigma,
                        std::uint64_t seed, const CohesionProtocol& protocol) {
  return run_trial(params, sigma, seed, protocol).schooling;
}

std::vector<TrialOutcome> run_all_trials(const ValidatedParams& params,
                                         double sigma,
                                         const CohesionProtocol& protocol) {
  validate(protocol);
  std::vector<TrialOutcome> out(protocol.trial_seeds.size());
  parallel_for(out.size(), protocol.workers, [&](std::size_t i) {
    out[i] = run_trial(params, sigma, protocol.trial_seeds[i], protocol,
                       /*stop_at_violation=*/false);
  });
  return out;
}

double sigma_at(const CohesionProtocol& protocol, std::int64_t k) {
  return protocol.sigma_start + static_cast<double>(k) * protocol.sigma_step;
}

SigmaLevel evaluate_level(const ValidatedParams& params, double sigma,
                          const CohesionProtocol& protocol) {
  const std::size_t n = protocol.trial_seeds.size();
  std::atomic<std::size_t> lowest_failure{n};
  // One cancel flag per trial: trial i is abandoned once some j < i failed.
  std::vector<std::atomic<bool>> cancel(n);
  for (auto& c : cancel) c.store(false);

  parallel_for(n, protocol.workers, [&](std::size_t i) {
    if (i > lowest_failure.load()) return;
    const TrialOutcome outcome = run_trial(
        params, sigma, protocol.trial_seeds[i], protocol, true, &cancel[i]);
    if (outcome.cancelled || outcome.schooling) return;
    std::size_t current = lowest_failure.load();
    while (i < current && !lowest_failure.compare_exchange_weak(current, i)) {
    }
    for (std::size_t j = i + 1; j < n; ++j) cancel[j].store(true);
  });

  SigmaLevel level;
  level.sigma = sigma;
  level.trials_passed = static_cast<int>(lowest_failure.load());
  level.all_pass = lowest_failure.load() == n;
  return level;
}

CohesionReport estimate_critical_sigma(const ValidatedParams& params,
                                       const CohesionProtocol& protocol) {
  validate(protocol);
  CohesionReport report;
  report.box_side = effective_box_side(params, protocol);

  auto evaluate = [&](std::int64_t k) {
    report.levels.push_back(
        evaluate_level(params, sigma_at(protocol, k), protocol));
    return report.levels.back().all_pass;
  };

  if (!evaluate(0)) {
    std::ostringstream os;
    os << "some trial is not schooling at sigma_start="
       << protocol.sigma_start;
    throw Error(ErrorCode::kNotSchoolingAtStart, os.str());
  }

  const std::int64_t k_max = last_grid_index(protocol);
  const std::int64_t stride =
      protocol.coarse_step > 0.0
          ? std::max<std::int64_t>(
                1, std::llround(protocol.coarse_step / protocol.sigma_step))
          : 1;

  std::int64_t passed = 0;
  while (passed < k_max) {
    const std::int64_t probe = std::min(passed + stride, k_max);
    if (evaluate(probe)) {
      passed = probe;
      continue;
    }
    // First failure lies in (passed, probe]; scan it at full resolution.
    std::int64_t first_fail = probe;
    for (std::int64_t k = passed + 1; k < probe; ++k) {
      if (!evaluate(k)) {
        first_fail = k;
        break;
      }
    }
    report.sigma_bar = sigma_at(protocol, first_fail - 1);
    return report;
  }
  std::ostringstream os;
  os << "no trial lost schooling up to sigma_max=" << protocol.sigma_max;
  throw Error(ErrorCode::kNoBreakBelowMax, os.str());
}

}  // namespace fishschool
