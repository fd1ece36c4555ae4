#include "fishschool/harness/sweeps.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

#include "fishschool/brownian.hpp"
#include "fishschool/error.hpp"
#include "fishschool/metrics.hpp"
#include "fishschool/parallel.hpp"

namespace fishschool::harness {
namespace {

Vec approach_axis(int dim) {
  Vec axis = Vec::Zero(dim);
  axis(0) = 1.0;
  return axis;
}

std::string describe(const Error& e) {
  return std::string(to_string(e.code())) + ": " + e.what();
}

/// Evaluates label(i) for every grid index, recording fishschool errors
/// per point instead of aborting the sweep.
SweepReport run_grid(std::string parameter, const ExperimentConfig& config,
                     const std::vector<double>& grid, int workers,
                     const std::function<PatternLabel(std::size_t)>& label) {
  SweepReport report;
  report.parameter = std::move(parameter);
  report.config_hash = config_hash(config);
  report.grid_values = grid;
  report.labels.assign(grid.size(), PatternLabel::kUnclassified);
  report.errors.assign(grid.size(), std::string());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    try {
      report.labels[i] = label(i);
    } catch (const Error& e) {
      report.errors[i] = describe(e);
    }
  });
  report.transition_boundaries =
      transition_boundaries(report.grid_values, report.labels);
  return report;
}

ModelParams with_exponent(ModelParams m, double p) {
  m.p_exp = p;
  m.q_exp = p + 1.0;
  if (auto* avoid = std::get_if<ObstacleAvoidance>(&m.external_force)) {
    avoid->p_obs = p;
    avoid->q_obs = p + 1.0;
  }
  return m;
}

}  // namespace

ValidatedParams bootstrap_params(const ExperimentConfig& config,
                                 double r_crit) {
  ModelParams m = config.model;
  m.p_exp = config.bootstrap.p_exp;
  m.q_exp = config.bootstrap.q_exp;
  m.r_crit = r_crit;
  m.sigma = 0.0;
  m.external_force = LinearDrag{config.bootstrap.kappa};
  return validate(m);
}

RelaxOptions bootstrap_options(const ExperimentConfig& config) {
  RelaxOptions options;
  options.t_max = config.bootstrap.t_max;
  options.dwell = config.bootstrap.dwell;
  options.tolerance = config.bootstrap.tolerance;
  return options;
}

Encounter run_encounter(const SwarmState& school,
                        const ValidatedParams& params,
                        const PlacementSpec& placement,
                        const SchoolingCriteria& criteria,
                        const SolverSpec& solver, std::uint64_t seed) {
  const auto* avoid =
      std::get_if<ObstacleAvoidance>(&params->external_force);
  if (avoid == nullptr) {
    throw Error(ErrorCode::kInvalidParams,
                "encounter needs an obstacle-avoidance force");
  }
  Encounter out;
  out.initial =
      place_school(school, avoid->obstacle, placement.gap, placement.speed);
  SimulationOptions options;
  options.dt = solver.dt;
  options.record_every = solver.record_every;
  options.t_end = solver.t_end > 0.0
                      ? solver.t_end
                      : encounter_horizon(placement.gap, placement.speed);
  if (params->sigma > 0.0) {
    BrownianStream noise(BrownianPaths{mix_seed(seed, 1), params->n_agents,
                                       params->dim,
                                       step_count(options.t_end, options.dt)});
    out.trajectory = simulate(out.initial, params, noise, options);
  } else {
    ZeroNoise noise(params->dim, params->n_agents);
    out.trajectory = simulate(out.initial, params, noise, options);
  }
  out.summary = summarize(out.trajectory, criteria.epsilon);
  out.label = classify(out.summary, avoid->obstacle,
                       approach_axis(params->dim), criteria);
  return out;
}

Encounter pattern_run(const ExperimentConfig& config, BootstrapCache& cache) {
  const std::uint64_t seed = config.seeds.front();
  const SwarmState school =
      cache.get(bootstrap_params(config, config.model.r_crit), config.criteria,
                seed, bootstrap_options(config));
  return run_encounter(school, validate(resolved_model(config)),
                       config.placement, config.criteria, config.solver, seed);
}

std::vector<double> transition_boundaries(
    const std::vector<double>& values,
    const std::vector<PatternLabel>& labels) {
  std::vector<double> out;
  for (std::size_t i = 1; i < values.size() && i < labels.size(); ++i) {
    if (labels[i] != labels[i - 1]) {
      out.push_back(0.5 * (values[i] + values[i - 1]));
    }
  }
  return out;
}

SweepReport sweep_exponent(const ExperimentConfig& config,
                           const std::vector<double>& grid,
                           BootstrapCache& cache, int workers) {
  const std::uint64_t seed = config.seeds.front();
  const ModelParams base = resolved_model(config);
  std::optional<SwarmState> school;
  std::string school_error;
  try {
    school = cache.get(bootstrap_params(config, base.r_crit), config.criteria,
                       seed, bootstrap_options(config));
  } catch (const Error& e) {
    school_error = describe(e);
  }
  return run_grid("p", config, grid, workers, [&](std::size_t i) {
    if (!school) throw Error(ErrorCode::kNoConvergence, school_error);
    const auto params = validate(with_exponent(base, grid[i]));
    return run_encounter(*school, params, config.placement, config.criteria,
                         config.solver, seed)
        .label;
  });
}

SweepReport sweep_speed(const ExperimentConfig& config,
                        const std::vector<double>& grid,
                        BootstrapCache& cache, int workers) {
  const std::uint64_t seed = config.seeds.front();
  const auto params = validate(resolved_model(config));
  std::optional<SwarmState> school;
  std::string school_error;
  try {
    school = cache.get(bootstrap_params(config, params->r_crit),
                       config.criteria, seed, bootstrap_options(config));
  } catch (const Error& e) {
    school_error = describe(e);
  }
  return run_grid("speed", config, grid, workers, [&](std::size_t i) {
    if (!school) throw Error(ErrorCode::kNoConvergence, school_error);
    PlacementSpec placement = config.placement;
    placement.speed = grid[i];
    return run_encounter(*school, params, placement, config.criteria,
                         config.solver, seed)
        .label;
  });
}

SweepReport sweep_critical_distance(const ExperimentConfig& config,
                                    const std::vector<double>& grid,
                                    BootstrapCache& cache, int workers) {
  const std::uint64_t seed = config.seeds.front();
  const ModelParams base = resolved_model(config);
  return run_grid("r", config, grid, workers, [&](std::size_t i) {
    const double r = grid[i];
    SchoolingCriteria criteria = config.criteria;
    criteria.epsilon = r;
    const SwarmState school = cache.get(bootstrap_params(config, r), criteria,
                                        seed, bootstrap_options(config));
    ModelParams m = base;
    m.r_crit = r;
    auto& avoid = std::get<ObstacleAvoidance>(m.external_force);
    avoid.r_obs = r;
    avoid.obstacle.radius = config.radius_factor * diameter(school);
    return run_encounter(school, validate(m), config.placement, criteria,
                         config.solver, seed)
        .label;
  });
}

StaircaseCheck check_staircase(const std::vector<double>& values,
                               const std::vector<PatternLabel>& labels,
                               const std::vector<PatternLabel>& order) {
  StaircaseCheck out;
  std::vector<std::pair<double, int>> ranked;
  std::vector<bool> seen(order.size(), false);
  for (std::size_t i = 0; i < values.size() && i < labels.size(); ++i) {
    int rank = -1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (order[k] == labels[i]) rank = static_cast<int>(k);
    }
    if (rank < 0) {
      ++out.anomalies;
      continue;
    }
    seen[static_cast<std::size_t>(rank)] = true;
    ranked.emplace_back(values[i], rank);
  }
  out.monotone = true;
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    if (ranked[i].second < ranked[i - 1].second) out.monotone = false;
  }
  out.complete = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    double boundary = nan;
    for (std::size_t i = 1; i < ranked.size(); ++i) {
      const int kk = static_cast<int>(k);
      if (ranked[i - 1].second <= kk && ranked[i].second > kk) {
        boundary = 0.5 * (ranked[i - 1].first + ranked[i].first);
        break;
      }
    }
    out.boundaries.push_back(boundary);
  }
  return out;
}

}  // namespace fishschool::harness
