#pragma once

#include <vector>

#include "fishschool/model.hpp"

namespace fishschool {

/// Pair distances below kDegenerateFraction * r are reported as
/// DegenerateDistance instead of being clamped.
inline constexpr double kDegenerateFraction = 1e-8;

/// r^p/dist^p - r^q/dist^q. Zero at dist == r, negative inside, positive
/// outside.
double attraction_weight(double dist, double r, double p, double q);

/// r^p/dist^p + r^q/dist^q. Strictly positive and decreasing in dist.
double matching_weight(double dist, double r, double p, double q);

struct RayHit {
  bool hit = false;
  Vec point;              // valid iff hit
  double distance = 0.0;  // |x - point|, valid iff hit
};

/// First intersection of the ray {x + s v : s >= 0} with the obstacle
/// surface. A zero velocity never hits; a tangent ray counts as a hit.
/// Throws AgentInsideObstacle when |x - center| <= radius.
RayHit ray_sphere_first_hit(const Vec& x, const Vec& v,
                            const Obstacle& obstacle);

/// Mirror image of v across the tangent plane at hit_point:
/// u = v - 2 (v.n) n with the outward unit normal n.
Vec reflect(const Vec& v, const Vec& hit_point, const Obstacle& obstacle);

/// Reflected velocity when the heading ray meets the obstacle, v otherwise.
Vec rf(const Vec& x, const Vec& v, const Obstacle& obstacle);

/// -gamma (R^P/|x-y|^P + R^Q/|x-y|^Q) (v - Rf(x, v)), zero on a miss.
Vec obstacle_force(const Vec& x, const Vec& v, const ObstacleAvoidance& cfg);

/// Evaluates (r/dist)^p and (r/dist)^q from the squared ratio, choosing a
/// cheaper route for integer exponents and for q = p + 1.
class PowerPair {
 public:
  PowerPair(double p, double q);

  struct Terms {
    double lo;  // (r/dist)^p
    double hi;  // (r/dist)^q
  };

  Terms operator()(double ratio_sq) const;

 private:
  enum class Route { kInteger, kUnitGap, kGeneral };

  double p_;
  double q_;
  int p_int_ = 0;
  int q_int_ = 0;
  Route route_;
};

/// Drift of the velocity equation. Owns scratch buffers so the integrator can
/// call it every step without allocating.
///
/// For agent i the pair sums run over j in ascending index order. The pair
/// weights are symmetric and computed once per unordered pair, so results are
/// bitwise reproducible for a given state.
class DriftKernel {
 public:
  explicit DriftKernel(const ValidatedParams& params);

  /// Writes dv/dt for every agent into accel (resized to d x N).
  /// Throws DegenerateDistance or AgentInsideObstacle.
  void accelerations(const SwarmState& state, AgentMatrix& accel);

  const ValidatedParams& params() const noexcept { return params_; }

 private:
  template <int D>
  void accumulate_pairs(const SwarmState& state, AgentMatrix& accel);
  void add_external(const SwarmState& state, AgentMatrix& accel) const;

  ValidatedParams params_;
  PowerPair powers_;
  std::vector<double> w_att_;
  std::vector<double> w_match_;
};

struct Drift {
  AgentMatrix position_rate;  // dx/dt = v
  AgentMatrix velocity_rate;  // dv/dt
};

Drift drift(const SwarmState& state, const ValidatedParams& params);

}  // namespace fishschool
