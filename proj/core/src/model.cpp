#include "fishschool/model.hpp"

#include <cmath>
#include <string>

#include "fishschool/error.hpp"

namespace fishschool {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidParams, what);
}

bool finite(double x) { return std::isfinite(x); }

void check_exponents(double lo, double hi, const char* lo_name,
                     const char* hi_name) {
  if (!finite(lo) || !finite(hi)) {
    invalid(std::string("non-finite exponent ") + lo_name + "/" + hi_name);
  }
  if (!(lo > 1.0)) invalid(std::string(lo_name) + ">1 violated");
  if (!(lo < hi)) {
    invalid(std::string(lo_name) + "<" + hi_name + " violated");
  }
}

}  // namespace

void validate(const Obstacle& obstacle, int dim) {
  if (obstacle.center.size() != dim) {
    invalid("obstacle center dimension does not match dim");
  }
  if (!obstacle.center.allFinite()) invalid("obstacle center not finite");
  if (!(obstacle.radius > 0.0) || !finite(obstacle.radius)) {
    invalid("rho>0 violated");
  }
}

ValidatedParams validate(const ModelParams& params) {
  if (params.dim != 2 && params.dim != 3) invalid("dim in {2,3} violated");
  if (params.n_agents < 1) invalid("n_agents>=1 violated");
  check_exponents(params.p_exp, params.q_exp, "p", "q");
  if (!(params.r_crit > 0.0) || !finite(params.r_crit)) {
    invalid("r>0 violated");
  }
  if (!(params.alpha > 0.0) || !finite(params.alpha)) {
    invalid("alpha>0 violated");
  }
  if (!(params.beta > 0.0) || !finite(params.beta)) {
    invalid("beta>0 violated");
  }
  if (!(params.sigma >= 0.0) || !finite(params.sigma)) {
    invalid("sigma>=0 violated");
  }

  if (const auto* drag = std::get_if<LinearDrag>(&params.external_force)) {
    if (!(drag->kappa >= 0.0) || !finite(drag->kappa)) {
      invalid("kappa>=0 violated");
    }
  } else if (const auto* avoid =
                 std::get_if<ObstacleAvoidance>(&params.external_force)) {
    validate(avoid->obstacle, params.dim);
    check_exponents(avoid->p_obs, avoid->q_obs, "P", "Q");
    if (!(avoid->r_obs > 0.0) || !finite(avoid->r_obs)) {
      invalid("R>0 violated");
    }
    if (!(avoid->gamma > 0.0) || !finite(avoid->gamma)) {
      invalid("gamma>0 violated");
    }
  }
  return ValidatedParams(params);
}

ValidatedParams ValidatedParams::with_sigma(double sigma) const {
  ModelParams copy = params_;
  copy.sigma = sigma;
  return validate(copy);
}

void validate(const SchoolingCriteria& criteria) {
  if (!(criteria.epsilon > 0.0)) invalid("epsilon>0 violated");
  if (!(criteria.theta > 0.0)) invalid("theta>0 violated");
  if (!(criteria.t_onset >= 0.0)) invalid("t_onset>=0 violated");
}

bool operator==(const SwarmState& a, const SwarmState& b) {
  return a.time == b.time && a.positions.rows() == b.positions.rows() &&
         a.positions.cols() == b.positions.cols() &&
         a.velocities.rows() == b.velocities.rows() &&
         a.velocities.cols() == b.velocities.cols() &&
         a.positions == b.positions && a.velocities == b.velocities;
}

}  // namespace fishschool
