#pragma once

#include <Eigen/Core>
#include <variant>

namespace fishschool {

/// A point or direction in R^d with d in {2, 3}. Fixed max size keeps it on
/// the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

/// d x N matrix, one column per agent.
using AgentMatrix = Eigen::MatrixXd;

struct Obstacle {
  Vec center;
  double radius = 1.0;
};

struct ZeroForce {};

/// F_i = -kappa * v_i. Used to relax schools to rest and in the free-space
/// cohesiveness runs.
struct LinearDrag {
  double kappa = 0.0;
};

/// Reflection-law avoidance of a single spherical obstacle.
struct ObstacleAvoidance {
  Obstacle obstacle;
  double gamma = 1.0;
  double p_obs = 2.0;
  double q_obs = 3.0;
  double r_obs = 0.5;
};

using ExternalForce = std::variant<ZeroForce, LinearDrag, ObstacleAvoidance>;

struct ModelParams {
  int n_agents = 2;
  int dim = 2;
  double alpha = 1.0;
  double beta = 1.0;
  double p_exp = 2.0;
  double q_exp = 3.0;
  double r_crit = 0.5;
  double sigma = 0.0;
  ExternalForce external_force = ZeroForce{};
};

/// ModelParams that passed validate(). Only validate() can produce one.
class ValidatedParams {
 public:
  const ModelParams& get() const noexcept { return params_; }
  const ModelParams* operator->() const noexcept { return &params_; }

  /// Same parameters with a different noise magnitude (sigma >= 0 is the
  /// only constraint touched, so the result stays valid).
  ValidatedParams with_sigma(double sigma) const;

 private:
  explicit ValidatedParams(ModelParams p) : params_(std::move(p)) {}
  friend ValidatedParams validate(const ModelParams& params);

  ModelParams params_;
};

/// Throws Error(kInvalidParams) naming the first violated constraint.
ValidatedParams validate(const ModelParams& params);

struct SchoolingCriteria {
  double epsilon = 0.5;
  double theta = 1e-6;
  double t_onset = 0.0;
};

void validate(const SchoolingCriteria& criteria);

void validate(const Obstacle& obstacle, int dim);

/// Positions and velocities of all agents at one instant.
struct SwarmState {
  double time = 0.0;
  AgentMatrix positions;
  AgentMatrix velocities;

  SwarmState() = default;
  SwarmState(int dim, int n_agents)
      : positions(AgentMatrix::Zero(dim, n_agents)),
        velocities(AgentMatrix::Zero(dim, n_agents)) {}

  int size() const noexcept { return static_cast<int>(positions.cols()); }
  int dim() const noexcept { return static_cast<int>(positions.rows()); }
  bool all_finite() const noexcept {
    return positions.allFinite() && velocities.allFinite();
  }
};

bool operator==(const SwarmState& a, const SwarmState& b);

}  // namespace fishschool
