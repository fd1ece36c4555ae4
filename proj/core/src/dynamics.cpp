#include "fishschool/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "fishschool/error.hpp"

namespace fishschool {
namespace {

void check_distance(double dist, double r) {
  if (!(dist >= kDegenerateFraction * r)) {
    std::ostringstream os;
    os << "distance " << dist << " below " << kDegenerateFraction << "*r";
    throw Error(ErrorCode::kDegenerateDistance, os.str());
  }
}

void check_outside(const Vec& x, const Obstacle& obstacle) {
  if (!((x - obstacle.center).norm() > obstacle.radius)) {
    throw Error(ErrorCode::kAgentInsideObstacle, "agent inside obstacle");
  }
}

double ipow(double base, int n) {
  double out = 1.0;
  for (int k = 0; k < n; ++k) out *= base;
  return out;
}

bool small_integer(double x, int* out) {
  const double rounded = std::round(x);
  if (rounded != x || rounded > 32.0) return false;
  *out = static_cast<int>(rounded);
  return true;
}

}  // namespace

double attraction_weight(double dist, double r, double p, double q) {
  check_distance(dist, r);
  const double s = r / dist;
  return std::pow(s, p) - std::pow(s, q);
}

double matching_weight(double dist, double r, double p, double q) {
  check_distance(dist, r);
  const double s = r / dist;
  return std::pow(s, p) + std::pow(s, q);
}

RayHit ray_sphere_first_hit(const Vec& x, const Vec& v,
                            const Obstacle& obstacle) {
  check_outside(x, obstacle);
  RayHit out;
  const double a = v.squaredNorm();
  if (a == 0.0) return out;

  // |offset + s v|^2 = rho^2  <=>  a s^2 + 2 b s + c = 0
  const Vec offset = x - obstacle.center;
  const double b = v.dot(offset);
  const double c = offset.squaredNorm() - obstacle.radius * obstacle.radius;
  // Outside the sphere c > 0, so both roots share a sign; they are
  // non-negative only when the ray heads towards the centre.
  if (b >= 0.0) return out;
  const double disc = b * b - a * c;
  if (disc < 0.0) return out;

  // Smaller root in the cancellation-free form c / (-b + sqrt(disc)).
  const double s = c / (-b + std::sqrt(disc));
  out.hit = true;
  out.point = x + s * v;
  out.distance = s * std::sqrt(a);
  return out;
}

Vec reflect(const Vec& v, const Vec& hit_point, const Obstacle& obstacle) {
  const Vec normal = (hit_point - obstacle.center).normalized();
  return v - 2.0 * v.dot(normal) * normal;
}

Vec rf(const Vec& x, const Vec& v, const Obstacle& obstacle) {
  const RayHit hit = ray_sphere_first_hit(x, v, obstacle);
  if (!hit.hit) return v;
  return reflect(v, hit.point, obstacle);
}

Vec obstacle_force(const Vec& x, const Vec& v, const ObstacleAvoidance& cfg) {
  const RayHit hit = ray_sphere_first_hit(x, v, cfg.obstacle);
  if (!hit.hit) return Vec::Zero(x.size());
  const Vec normal = (hit.point - cfg.obstacle.center).normalized();
  const double vn = v.dot(normal);
  // Grazing ray: Rf(x, v) = v, so the bracket vanishes.
  if (vn == 0.0) return Vec::Zero(x.size());
  const double weight =
      matching_weight(hit.distance, cfg.r_obs, cfg.p_obs, cfg.q_obs);
  // v - Rf = 2 (v.n) n
  return -cfg.gamma * weight * (2.0 * vn) * normal;
}

PowerPair::PowerPair(double p, double q) : p_(p), q_(q) {
  if (small_integer(p, &p_int_) && small_integer(q, &q_int_)) {
    route_ = Route::kInteger;
  } else if (q == p + 1.0) {
    route_ = Route::kUnitGap;
  } else {
    route_ = Route::kGeneral;
  }
}

PowerPair::Terms PowerPair::operator()(double ratio_sq) const {
  switch (route_) {
    case Route::kInteger: {
      const double s = std::sqrt(ratio_sq);
      const double lo = ipow(s, p_int_);
      return {lo, lo * ipow(s, q_int_ - p_int_)};
    }
    case Route::kUnitGap: {
      const double lo = std::exp(0.5 * p_ * std::log(ratio_sq));
      return {lo, lo * std::sqrt(ratio_sq)};
    }
    case Route::kGeneral:
      break;
  }
  const double half_log = 0.5 * std::log(ratio_sq);
  return {std::exp(p_ * half_log), std::exp(q_ * half_log)};
}

DriftKernel::DriftKernel(const ValidatedParams& params)
    : params_(params), powers_(params->p_exp, params->q_exp) {}

template <int D>
void DriftKernel::accumulate_pairs(const SwarmState& state,
                                   AgentMatrix& accel) {
  const int n = state.size();
  const double* x = state.positions.data();
  const double* v = state.velocities.data();
  double* out = accel.data();

  const double r = params_->r_crit;
  const double r_sq = r * r;
  const double min_sq = (kDegenerateFraction * r) * (kDegenerateFraction * r);
  const double alpha = params_->alpha;
  const double beta = params_->beta;

  const auto un = static_cast<std::size_t>(n);
  w_att_.resize(un * un);
  w_match_.resize(un * un);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d_sq = 0.0;
      for (int k = 0; k < D; ++k) {
        const double diff = x[i * D + k] - x[j * D + k];
        d_sq += diff * diff;
      }
      if (!(d_sq >= min_sq)) {
        std::ostringstream os;
        os << "agents " << i << " and " << j << " at distance "
           << std::sqrt(d_sq);
        throw Error(ErrorCode::kDegenerateDistance, os.str());
      }
      const PowerPair::Terms t = powers_(r_sq / d_sq);
      const std::size_t ij = static_cast<std::size_t>(i) * un + j;
      const std::size_t ji = static_cast<std::size_t>(j) * un + i;
      w_att_[ij] = w_att_[ji] = t.lo - t.hi;
      w_match_[ij] = w_match_[ji] = t.lo + t.hi;
    }
  }

  for (int i = 0; i < n; ++i) {
    double pos_sum[D] = {};
    double vel_sum[D] = {};
    const double* wa = &w_att_[static_cast<std::size_t>(i) * un];
    const double* wm = &w_match_[static_cast<std::size_t>(i) * un];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < D; ++k) {
        pos_sum[k] += wa[j] * (x[i * D + k] - x[j * D + k]);
        vel_sum[k] += wm[j] * (v[i * D + k] - v[j * D + k]);
      }
    }
    for (int k = 0; k < D; ++k) {
      out[i * D + k] = -alpha * pos_sum[k] - beta * vel_sum[k];
    }
  }
}

void DriftKernel::add_external(const SwarmState& state,
                               AgentMatrix& accel) const {
  const ExternalForce& force = params_->external_force;
  if (std::holds_alternative<ZeroForce>(force)) return;
  if (const auto* drag = std::get_if<LinearDrag>(&force)) {
    accel.noalias() -= drag->kappa * state.velocities;
    return;
  }
  const auto& avoid = std::get<ObstacleAvoidance>(force);
  for (int i = 0; i < state.size(); ++i) {
    const Vec xi = state.positions.col(i);
    const Vec vi = state.velocities.col(i);
    accel.col(i) += obstacle_force(xi, vi, avoid);
  }
}

void DriftKernel::accelerations(const SwarmState& state, AgentMatrix& accel) {
  accel.resize(state.dim(), state.size());
  if (state.dim() == 2) {
    accumulate_pairs<2>(state, accel);
  } else if (state.dim() == 3) {
    accumulate_pairs<3>(state, accel);
  } else {
    throw Error(ErrorCode::kInvalidParams, "dim in {2,3} violated");
  }
  add_external(state, accel);
}

Drift drift(const SwarmState& state, const ValidatedParams& params) {
  DriftKernel kernel(params);
  Drift out;
  out.position_rate = state.velocities;
  kernel.accelerations(state, out.velocity_rate);
  return out;
}

}  // namespace fishschool
