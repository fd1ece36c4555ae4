#pragma once

#include <vector>

#include "fishschool/model.hpp"
#include "fishschool/sde.hpp"

namespace fishschool {

/// Connected components of the graph joining agents at distance <= epsilon.
int epsilon_components(const SwarmState& state, double epsilon);

/// sqrt((1/N) sum |v_i - mean v|^2)
double sigma_v(const SwarmState& state);

Vec centroid(const SwarmState& state);
Vec mean_velocity(const SwarmState& state);

/// max_i |x_i - centroid|
double diameter(const SwarmState& state);

double max_speed(const SwarmState& state);

struct TrajectorySummary {
  std::vector<double> times;
  std::vector<int> n_components;
  std::vector<double> sigma_v;
  std::vector<Vec> centroid;
  std::vector<Vec> mean_velocity;
  std::vector<double> diameter;
  Termination termination = Completed{};

  std::size_t size() const noexcept { return times.size(); }
  void append(const SwarmState& state, double epsilon);
};

TrajectorySummary summarize(const Trajectory& trajectory, double epsilon);

/// True iff the run completed and every sample at time >= t_onset has one
/// component and sigma_V <= theta. Throws HorizonTooShort when a completed
/// run never reaches t_onset.
bool is_schooling(const TrajectorySummary& summary,
                  const SchoolingCriteria& criteria);

/// Slack used when comparing sample times against t_onset.
inline constexpr double kTimeSlack = 1e-9;

}  // namespace fishschool
