#include "fishschool/metrics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fishschool/error.hpp"

namespace fishschool {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
    components_ = n;
  }

  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --components_;
  }

  int components() const noexcept { return components_; }

 private:
  std::vector<int> parent_;
  int components_ = 0;
};

}  // namespace

int epsilon_components(const SwarmState& state, double epsilon) {
  const int n = state.size();
  DisjointSets sets(n);
  const double eps_sq = epsilon * epsilon;
  for (int i = 0; i < n && sets.components() > 1; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((state.positions.col(i) - state.positions.col(j)).squaredNorm() <=
          eps_sq) {
        sets.unite(i, j);
      }
    }
  }
  return sets.components();
}

Vec centroid(const SwarmState& state) {
  return state.positions.rowwise().mean();
}

Vec mean_velocity(const SwarmState& state) {
  return state.velocities.rowwise().mean();
}

double sigma_v(const SwarmState& state) {
  if (state.size() == 0) return 0.0;
  const Vec mean = mean_velocity(state);
  return std::sqrt((state.velocities.colwise() - mean).colwise()
                       .squaredNorm()
                       .mean());
}

double diameter(const SwarmState& state) {
  if (state.size() == 0) return 0.0;
  const Vec center = centroid(state);
  return (state.positions.colwise() - center).colwise().norm().maxCoeff();
}

double max_speed(const SwarmState& state) {
  if (state.size() == 0) return 0.0;
  return state.velocities.colwise().norm().maxCoeff();
}

void TrajectorySummary::append(const SwarmState& state, double epsilon) {
  times.push_back(state.time);
  n_components.push_back(epsilon_components(state, epsilon));
  sigma_v.push_back(fishschool::sigma_v(state));
  centroid.push_back(fishschool::centroid(state));
  mean_velocity.push_back(fishschool::mean_velocity(state));
  diameter.push_back(fishschool::diameter(state));
}

TrajectorySummary summarize(const Trajectory& trajectory, double epsilon) {
  TrajectorySummary out;
  for (const auto& s : trajectory.states) out.append(s, epsilon);
  out.termination = trajectory.termination;
  return out;
}

bool is_schooling(const TrajectorySummary& summary,
                  const SchoolingCriteria& criteria) {
  if (!completed(summary.termination)) return false;
  if (summary.times.empty() ||
      summary.times.back() < criteria.t_onset - kTimeSlack) {
    std::ostringstream os;
    os << "trajectory ends at "
       << (summary.times.empty() ? 0.0 : summary.times.back())
       << " before t_onset " << criteria.t_onset;
    throw Error(ErrorCode::kHorizonTooShort, os.str());
  }
  for (std::size_t k = 0; k < summary.size(); ++k) {
    if (summary.times[k] < criteria.t_onset - kTimeSlack) continue;
    if (summary.n_components[k] != 1) return false;
    if (summary.sigma_v[k] > criteria.theta) return false;
  }
  return true;
}

}  // namespace fishschool
