#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "fishschool/brownian.hpp"
#include "fishschool/dynamics.hpp"
#include "fishschool/model.hpp"

namespace fishschool {

inline constexpr double kDefaultDt = 1e-3;
inline constexpr int kDefaultRecordEvery = 10;
inline constexpr double kSpeedSentinelFactor = 1e3;

struct Completed {
  friend bool operator==(const Completed&, const Completed&) = default;
};
struct BlowUp {
  std::int64_t step = 0;
  friend bool operator==(const BlowUp&, const BlowUp&) = default;
};
struct Penetration {
  std::int64_t step = 0;
  int agent = 0;
  friend bool operator==(const Penetration&, const Penetration&) = default;
};
using Termination = std::variant<Completed, BlowUp, Penetration>;

inline bool completed(const Termination& t) {
  return std::holds_alternative<Completed>(t);
}

struct Trajectory {
  double dt = kDefaultDt;
  int record_every = kDefaultRecordEvery;
  std::vector<SwarmState> states;
  Termination termination = Completed{};
};

/// One Euler-Maruyama step. Both equations use the drift at the pre-step
/// state; the position noise is (sigma * noise) * sqrt(dt), so a run with
/// sigma and unit increments W matches a run with sigma = 1 and increments
/// sigma * W bit for bit.
SwarmState step(const SwarmState& state, const ValidatedParams& params,
                const AgentMatrix& noise, double dt);

/// Reusable in-place stepper around a DriftKernel.
class Stepper {
 public:
  Stepper(const ValidatedParams& params, double dt);

  /// Advances state by dt. Propagates DegenerateDistance and
  /// AgentInsideObstacle from the drift.
  void advance(SwarmState& state, const AgentMatrix& noise);

  double dt() const noexcept { return dt_; }

 private:
  DriftKernel kernel_;
  AgentMatrix accel_;
  double dt_;
  double sqrt_dt_;
  double sigma_;
};

struct SimulationOptions {
  double dt = kDefaultDt;
  double t_end = 1.0;
  int record_every = kDefaultRecordEvery;
  /// <= 0 selects kSpeedSentinelFactor * max(initial max speed, 1).
  double v_max = 0.0;
};

/// Called with the initial state and every record_every-th state. Returning
/// false stops the run early (termination stays Completed).
using SampleObserver = std::function<bool(const SwarmState&)>;

struct RunResult {
  Termination termination = Completed{};
  std::int64_t steps_taken = 0;
  bool stopped_early = false;
};

std::int64_t step_count(double t_end, double dt);

/// Core time loop: flags BlowUp when a coordinate turns non-finite, a speed
/// exceeds v_max or two agents collapse onto each other; flags Penetration
/// when an agent enters the obstacle. Flagged states are never observed.
RunResult integrate(const SwarmState& initial, const ValidatedParams& params,
                    NoiseSource& noise, const SimulationOptions& options,
                    const SampleObserver& observer);

Trajectory simulate(const SwarmState& initial, const ValidatedParams& params,
                    const BrownianPaths& paths, double dt, double t_end,
                    int record_every = kDefaultRecordEvery);

Trajectory simulate(const SwarmState& initial, const ValidatedParams& params,
                    NoiseSource& noise, const SimulationOptions& options);

/// Uniform positions in an axis-aligned cube of the given side centred at
/// the origin, zero velocities. Draws are rejected while any pair is closer
/// than min_separation.
SwarmState random_school(int dim, int n_agents, double box_side,
                         double min_separation, std::uint64_t seed);

struct RelaxOptions {
  double dt = kDefaultDt;
  double t_max = 3000.0;
  double dwell = 1.0;
  int check_every = kDefaultRecordEvery;
  /// <= 0 selects 2 r N^(1/d).
  double box_side = 0.0;
  /// Bound on speed, sigma_V and |dv/dt| for settling; <= 0 uses theta.
  double tolerance = 0.0;
};

/// Integrates the noise-free system with linear drag from a random school
/// until n_eps == 1 and max speed, sigma_V and max |dv/dt| stay within the
/// settle tolerance (theta unless options.tolerance > 0) for options.dwell
/// time units. Returns that state with time reset to 0 and velocities
/// zeroed.
/// Throws NoConvergence after t_max.
SwarmState relax_to_schooling(const ValidatedParams& params,
                              const SchoolingCriteria& criteria,
                              std::uint64_t seed,
                              const RelaxOptions& options = {});

/// Moves the school so its centroid sits `gap` before the obstacle centre on
/// the negative first axis, with every velocity (speed, 0, ...).
/// Throws GapTooSmall unless gap > radius + diameter(state).
SwarmState place_school(const SwarmState& state, const Obstacle& obstacle,
                        double gap, double speed);

}  // namespace fishschool
