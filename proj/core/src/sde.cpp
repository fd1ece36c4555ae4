#include "fishschool/sde.hpp"

#include <cmath>
#include <sstream>

#include "fishschool/error.hpp"
#include "fishschool/metrics.hpp"

namespace fishschool {
namespace {

const Obstacle* obstacle_of(const ValidatedParams& params) {
  if (const auto* avoid =
          std::get_if<ObstacleAvoidance>(&params->external_force)) {
    return &avoid->obstacle;
  }
  return nullptr;
}

int first_inside(const SwarmState& state, const Obstacle& obstacle) {
  for (int i = 0; i < state.size(); ++i) {
    const double dist =
        (state.positions.col(i) - obstacle.center).norm();
    if (!(dist > obstacle.radius)) return i;
  }
  return -1;
}

}  // namespace

Stepper::Stepper(const ValidatedParams& params, double dt)
    : kernel_(params), dt_(dt), sqrt_dt_(std::sqrt(dt)),
      sigma_(params->sigma) {
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidParams, "dt>0 violated");
}

void Stepper::advance(SwarmState& state, const AgentMatrix& noise) {
  kernel_.accelerations(state, accel_);
  if (sigma_ != 0.0) {
    state.positions += state.velocities * dt_ + (sigma_ * noise) * sqrt_dt_;
  } else {
    state.positions += state.velocities * dt_;
  }
  state.velocities += accel_ * dt_;
  state.time += dt_;
}

SwarmState step(const SwarmState& state, const ValidatedParams& params,
                const AgentMatrix& noise, double dt) {
  Stepper stepper(params, dt);
  SwarmState out = state;
  stepper.advance(out, noise);
  return out;
}

std::int64_t step_count(double t_end, double dt) {
  return static_cast<std::int64_t>(std::llround(t_end / dt));
}

RunResult integrate(const SwarmState& initial, const ValidatedParams& params,
                    NoiseSource& noise, const SimulationOptions& options,
                    const SampleObserver& observer) {
  if (!(options.t_end > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "t_end>0 violated");
  }
  if (options.record_every < 1) {
    throw Error(ErrorCode::kInvalidParams, "record_every>=1 violated");
  }
  if (initial.size() != params->n_agents || initial.dim() != params->dim) {
    throw Error(ErrorCode::kInvalidParams,
                "state shape does not match n_agents/dim");
  }

  RunResult result;
  Stepper stepper(params, options.dt);
  const Obstacle* obstacle = obstacle_of(params);
  const double v_max =
      options.v_max > 0.0
          ? options.v_max
          : kSpeedSentinelFactor * std::max(max_speed(initial), 1.0);

  if (!initial.all_finite()) {
    result.termination = BlowUp{0};
    return result;
  }
  if (obstacle != nullptr) {
    if (const int agent = first_inside(initial, *obstacle); agent >= 0) {
      result.termination = Penetration{0, agent};
      return result;
    }
  }
  if (observer && !observer(initial)) {
    result.stopped_early = true;
    return result;
  }

  const std::int64_t n_steps = step_count(options.t_end, options.dt);
  const double t0 = initial.time;
  SwarmState state = initial;
  AgentMatrix increment;
  for (std::int64_t k = 1; k <= n_steps; ++k) {
    noise.next(increment);
    try {
      stepper.advance(state, increment);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDegenerateDistance) {
        result.termination = BlowUp{k};
      } else if (e.code() == ErrorCode::kAgentInsideObstacle) {
        result.termination =
            Penetration{k, obstacle ? std::max(0, first_inside(state, *obstacle)) : 0};
      } else {
        throw;
      }
      result.steps_taken = k - 1;
      return result;
    }
    state.time = t0 + static_cast<double>(k) * options.dt;
    result.steps_taken = k;

    if (!state.all_finite() || max_speed(state) > v_max) {
      result.termination = BlowUp{k};
      return result;
    }
    if (obstacle != nullptr) {
      if (const int agent = first_inside(state, *obstacle); agent >= 0) {
        result.termination = Penetration{k, agent};
        return result;
      }
    }
    if (k % options.record_every == 0 && observer && !observer(state)) {
      result.stopped_early = true;
      return result;
    }
  }
  return result;
}

Trajectory simulate(const SwarmState& initial, const ValidatedParams& params,
                    NoiseSource& noise, const SimulationOptions& options) {
  Trajectory out;
  out.dt = options.dt;
  out.record_every = options.record_every;
  const RunResult run =
      integrate(initial, params, noise, options, [&](const SwarmState& s) {
        out.states.push_back(s);
        return true;
      });
  out.termination = run.termination;
  return out;
}

Trajectory simulate(const SwarmState& initial, const ValidatedParams& params,
                    const BrownianPaths& paths, double dt, double t_end,
                    int record_every) {
  if (paths.n_steps < step_count(t_end, dt)) {
    throw Error(ErrorCode::kInvalidParams,
                "Brownian paths shorter than t_end/dt");
  }
  if (paths.n_agents != params->n_agents || paths.dim != params->dim) {
    throw Error(ErrorCode::kInvalidParams,
                "Brownian paths shape does not match params");
  }
  BrownianStream stream(paths);
  SimulationOptions options;
  options.dt = dt;
  options.t_end = t_end;
  options.record_every = record_every;
  return simulate(initial, params, stream, options);
}

SwarmState random_school(int dim, int n_agents, double box_side,
                         double min_separation, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> coord(-0.5 * box_side,
                                               0.5 * box_side);
  SwarmState state(dim, n_agents);
  const double min_sq = min_separation * min_separation;
  constexpr int kMaxAttempts = 100000;
  for (int i = 0; i < n_agents; ++i) {
    int attempt = 0;
    for (;; ++attempt) {
      if (attempt == kMaxAttempts) {
        throw Error(ErrorCode::kInvalidParams,
                    "cannot place agents with the requested separation");
      }
      for (int k = 0; k < dim; ++k) state.positions(k, i) = coord(engine);
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        ok = (state.positions.col(i) - state.positions.col(j))
                 .squaredNorm() >= min_sq;
      }
      if (ok) break;
    }
  }
  return state;
}

SwarmState relax_to_schooling(const ValidatedParams& params,
                              const SchoolingCriteria& criteria,
                              std::uint64_t seed,
                              const RelaxOptions& options) {
  if (!std::holds_alternative<LinearDrag>(params->external_force)) {
    throw Error(ErrorCode::kInvalidParams,
                "relaxation requires a LinearDrag external force");
  }
  validate(criteria);
  const int n = params->n_agents;
  const int d = params->dim;
  const double r = params->r_crit;
  const double side = options.box_side > 0.0
                          ? options.box_side
                          : 2.0 * r * std::pow(static_cast<double>(n), 1.0 / d);
  SwarmState state = random_school(d, n, side, 0.5 * r, seed);
  if (n == 1) return state;

  const ValidatedParams quiet = params.with_sigma(0.0);
  Stepper stepper(quiet, options.dt);
  DriftKernel residual(quiet);
  AgentMatrix accel;
  const AgentMatrix no_noise = AgentMatrix::Zero(d, n);
  const std::int64_t n_steps = step_count(options.t_max, options.dt);
  double held_since = -1.0;
  const double tol = options.tolerance > 0.0 ? options.tolerance : criteria.theta;

  for (std::int64_t k = 1; k <= n_steps; ++k) {
    stepper.advance(state, no_noise);
    state.time = static_cast<double>(k) * options.dt;
    if (!state.all_finite()) {
      throw Error(ErrorCode::kNoConvergence, "relaxation diverged");
    }
    if (k % options.check_every != 0) continue;

    bool settled = max_speed(state) <= tol && sigma_v(state) <= tol &&
                   epsilon_components(state, criteria.epsilon) == 1;
    if (settled) {
      residual.accelerations(state, accel);
      settled = accel.colwise().norm().maxCoeff() <= tol;
    }
    if (!settled) {
      held_since = -1.0;
      continue;
    }
    if (held_since < 0.0) held_since = state.time;
    if (state.time - held_since >= options.dwell) {
      state.time = 0.0;
      state.velocities.setZero();
      return state;
    }
  }
  std::ostringstream os;
  os << "school did not settle within t_max=" << options.t_max;
  throw Error(ErrorCode::kNoConvergence, os.str());
}

SwarmState place_school(const SwarmState& state, const Obstacle& obstacle,
                        double gap, double speed) {
  const double extent = diameter(state);
  if (!(gap > obstacle.radius + extent)) {
    std::ostringstream os;
    os << "gap " << gap << " must exceed radius + diameter = "
       << obstacle.radius + extent;
    throw Error(ErrorCode::kGapTooSmall, os.str());
  }
  const int d = state.dim();
  Vec target = obstacle.center;
  target(0) -= gap;
  const Vec shift = target - centroid(state);

  SwarmState out = state;
  out.positions.colwise() += shift;
  Vec heading = Vec::Zero(d);
  heading(0) = speed;
  out.velocities.colwise() = heading;
  return out;
}

}  // namespace fishschool
