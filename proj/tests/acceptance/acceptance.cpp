// Acceptance gate: runs criteria 1-12 and prints one PASS/FAIL line each.
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fishschool/brownian.hpp"
#include "fishschool/cohesion.hpp"
#include "fishschool/dynamics.hpp"
#include "fishschool/error.hpp"
#include "fishschool/harness/bootstrap_cache.hpp"
#include "fishschool/harness/config.hpp"
#include "fishschool/harness/run.hpp"
#include "fishschool/harness/sweeps.hpp"
#include "fishschool/metrics.hpp"
#include "fishschool/parallel.hpp"
#include "fishschool/patterns.hpp"
#include "fishschool/sde.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace fs = fishschool;
namespace fh = fishschool::harness;

namespace {

using fs::PatternLabel;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  int workers = 8;
  fh::BootstrapCache cache;
  // Cohesiveness results keyed by "<profile>:<variant>".
  std::map<std::string, std::string> sigma_errors;
  std::map<std::string, double> sigma_bars;
};

fh::ExperimentConfig config_named(const std::string& name) {
  return fh::load_config(std::string(FISHSCHOOL_CONFIG_DIR) + "/" + name);
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << x;
  return out.str();
}

std::string labels_text(const fh::SweepReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += fmt(report.grid_values[i]) + ":" +
           std::string(fs::to_string(report.labels[i]));
  }
  return out;
}

// Compressed run-length view of a long label sequence.
std::string runs_text(const fh::SweepReport& report) {
  std::string out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= report.labels.size(); ++i) {
    if (i == report.labels.size() || report.labels[i] != report.labels[start]) {
      if (!out.empty()) out += ", ";
      out += std::string(fs::to_string(report.labels[start])) + " [" +
             fmt(report.grid_values[start]) + ".." +
             fmt(report.grid_values[i - 1]) + "]";
      start = i;
    }
  }
  return out;
}

std::string errors_text(const fh::SweepReport& report) {
  std::set<std::string> distinct;
  for (const auto& e : report.errors) {
    if (!e.empty()) distinct.insert(e);
  }
  std::string out;
  for (const auto& e : distinct) out += "; error: " + e;
  return out;
}

const std::vector<PatternLabel> kForward{
    PatternLabel::kRebound, PatternLabel::kPullback,
    PatternLabel::kPassAndReunion, PatternLabel::kSeparation};

Outcome staircase_outcome(const fh::SweepReport& report,
                          const std::vector<PatternLabel>& order,
                          const std::vector<double>& targets, double tol,
                          int max_anomalies) {
  const auto check = fh::check_staircase(report.grid_values, report.labels, order);
  bool pass = check.monotone && check.complete && check.anomalies <= max_anomalies;
  std::string detail = "monotone=" + std::to_string(check.monotone) +
                       " complete=" + std::to_string(check.complete) +
                       " anomalies=" + std::to_string(check.anomalies);
  if (!targets.empty()) {
    detail += " boundaries=";
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const bool have = k < check.boundaries.size() &&
                        std::isfinite(check.boundaries[k]);
      const double b = have ? check.boundaries[k] : std::nan("");
      const bool ok = have && std::abs(b - targets[k]) <= tol;
      pass = pass && ok;
      detail += (k ? "," : "") + fmt(b) + "(want " + fmt(targets[k]) + "±" +
                fmt(tol) + (ok ? " ok)" : " miss)");
    }
  }
  detail += " | " + runs_text(report) + errors_text(report);
  return {pass, detail};
}

// 1. Four-pattern panel.
Outcome panel(Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const auto config = config_named("four_pattern_panel.json");
  const auto report = fh::sweep_exponent(config, config.grid->values(), ctx.cache,
                                         ctx.workers);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count();
  const bool exact = report.labels == kForward;
  return {exact && seconds < 120.0,
          labels_text(report) + " (" + fmt(seconds, 3) + " s)" +
              errors_text(report)};
}

// 2. Exponent sweep.
Outcome exponent_sweep(Context& ctx) {
  const auto config = config_named("sweep_exponent.json");
  const auto report = fh::sweep_exponent(config, config.grid->values(), ctx.cache,
                                         ctx.workers);
  return staircase_outcome(report, kForward, {2.100, 3.371, 3.497}, 0.3, 2);
}

// 3. Speed sweep.
Outcome speed_sweep(Context& ctx) {
  const auto config = config_named("sweep_speed.json");
  const auto report = fh::sweep_speed(config, config.grid->values(), ctx.cache,
                                      ctx.workers);
  return staircase_outcome(report, kForward, {1.200, 2.590, 4.867}, 0.6, 0);
}

// 4. Critical-distance sweep plus the interval midpoints.
Outcome rcrit_sweep(Context& ctx) {
  const auto config = config_named("sweep_rcrit.json");
  const std::vector<PatternLabel> order(kForward.rbegin(), kForward.rend());
  const auto report = fh::sweep_critical_distance(config, config.grid->values(),
                                                  ctx.cache, ctx.workers);
  Outcome out = staircase_outcome(report, order, {}, 0.0, 0);
  const std::vector<double> midpoints{0.25, 0.45, 1.3, 2.45};
  const auto mids = fh::sweep_critical_distance(config, midpoints, ctx.cache,
                                                ctx.workers);
  const bool mids_ok = mids.labels == order;
  out.pass = out.pass && mids_ok;
  out.detail += " | midpoints " + labels_text(mids) +
                (mids_ok ? " ok" : " (want Separation PassAndReunion Pullback Rebound)") +
                errors_text(mids);
  return out;
}

// Cohesiveness variants: p with q = p + 1, or r with epsilon = r.
fh::ExperimentConfig cohesion_variant(double p, double r) {
  auto config = config_named("cohesion.json");
  config.model.p_exp = p;
  config.model.q_exp = p + 1.0;
  config.model.r_crit = r;
  config.criteria.epsilon = r;
  return config;
}

fs::CohesionProtocol ci_profile(fs::CohesionProtocol protocol) {
  const auto ci = fs::ci_protocol();
  protocol.n_trials = ci.n_trials;
  protocol.sigma_step = ci.sigma_step;
  protocol.trial_seeds.resize(static_cast<std::size_t>(ci.n_trials));
  return protocol;
}

// Returns false and fills the error when the estimate throws.
bool sigma_bar(Context& ctx, const std::string& profile, double p, double r,
               double& out) {
  const std::string key = profile + ":p=" + fmt(p) + ",r=" + fmt(r);
  if (auto it = ctx.sigma_bars.find(key); it != ctx.sigma_bars.end()) {
    out = it->second;
    return true;
  }
  if (ctx.sigma_errors.count(key)) return false;
  const auto config = cohesion_variant(p, r);
  auto protocol = fh::cohesion_protocol(config, ctx.workers);
  if (profile == "ci") protocol = ci_profile(protocol);
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto params = fs::validate(fh::resolved_model(config));
    out = fs::estimate_critical_sigma(params, protocol).sigma_bar;
    ctx.sigma_bars[key] = out;
  } catch (const fs::Error& e) {
    ctx.sigma_errors[key] =
        std::string(fs::to_string(e.code())) + ": " + e.what();
    std::cout << "  [" << key << "] " << ctx.sigma_errors[key] << std::endl;
    return false;
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count();
  std::cout << "  [" << key << "] sigma_bar=" << fmt(out) << " ("
            << fmt(seconds, 3) << " s)" << std::endl;
  return true;
}

// 5. Cohesiveness magnitude.
Outcome cohesion_magnitude(Context& ctx) {
  double value = 0.0;
  if (!sigma_bar(ctx, "full", 4.0, 0.5, value)) {
    return {false, ctx.sigma_errors.begin()->second};
  }
  return {value >= 0.03 && value <= 0.08,
          "sigma_bar=" + fmt(value) + " (want [0.03, 0.08])"};
}

Outcome orderings(Context& ctx, const std::string& profile) {
  const std::vector<double> ps{2.0, 3.0, 3.62, 4.0};
  const std::vector<double> rs{0.5, 0.6, 0.7};
  std::vector<double> by_p, by_r;
  std::string detail = profile + ":";
  bool ok = true;
  for (double p : ps) {
    double v = std::nan("");
    ok = sigma_bar(ctx, profile, p, 0.5, v) && ok;
    by_p.push_back(v);
    detail += " p" + fmt(p) + "=" + fmt(v);
  }
  for (double r : rs) {
    double v = std::nan("");
    ok = sigma_bar(ctx, profile, 4.0, r, v) && ok;
    by_r.push_back(v);
    detail += " r" + fmt(r) + "=" + fmt(v);
  }
  if (!ok) return {false, detail + " (estimate failed)"};
  const bool p_order = by_p[0] > by_p[1] && by_p[1] >= by_p[2] &&
                       by_p[2] >= by_p[3];
  const bool p_gap = by_p[0] - by_p[3] >= 0.005;
  const bool r_order = by_r[0] <= by_r[1] && by_r[1] <= by_r[2];
  // The gap requirement applies to the full-resolution protocol.
  const bool pass = p_order && r_order && (profile == "ci" || p_gap);
  detail += " p_order=" + std::to_string(p_order) +
            " gap=" + fmt(by_p[0] - by_p[3]) + " r_order=" + std::to_string(r_order);
  return {pass, detail};
}

// 6. Cohesiveness orderings, full and CI profiles.
Outcome cohesion_orderings(Context& ctx) {
  const Outcome full = orderings(ctx, "full");
  const Outcome ci = orderings(ctx, "ci");
  return {full.pass && ci.pass, full.detail + " || " + ci.detail};
}

// 7. Schooling spot checks over the fixed seed set.
Outcome spot_checks(Context& ctx) {
  const auto config = config_named("cohesion.json");
  const auto params = fs::validate(fh::resolved_model(config));
  const auto protocol = fh::cohesion_protocol(config, ctx.workers);
  auto count = [&](double sigma, auto field) {
    int n = 0;
    for (const auto& t : fs::run_all_trials(params, sigma, protocol)) {
      if (field(t)) ++n;
    }
    return n;
  };
  const int schooling =
      count(0.02, [](const fs::TrialOutcome& t) { return t.schooling; });
  const int theta_fail = count(0.069, [](const fs::TrialOutcome& t) {
    return !t.schooling && t.exceeded_theta;
  });
  const int split_fail = count(0.06, [](const fs::TrialOutcome& t) {
    return !t.schooling && t.broke_connectivity;
  });
  const bool pass = schooling >= 18 && theta_fail >= 1 && split_fail >= 1;
  return {pass, "sigma=0.02 schooling " + std::to_string(schooling) + "/" +
                    std::to_string(protocol.n_trials) +
                    "; sigma=0.069 sigmaV failures " + std::to_string(theta_fail) +
                    "; sigma=0.06 connectivity failures " +
                    std::to_string(split_fail)};
}

// 8. Momentum conservation of the interaction drift.
Outcome momentum(Context&) {
  std::mt19937_64 rng(31337);
  int evaluated = 0, violations = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const int dim = 2 + trial % 2;
    const auto m = fs::testing::random_params(rng, n, dim);
    const double box = 2.0 * m.r_crit * std::pow(n, 1.0 / dim);
    const auto state = fs::random_school(dim, n, box, 0.3 * m.r_crit, rng());
    fs::DriftKernel kernel(fs::validate(m));
    fs::AgentMatrix accel;
    kernel.accelerations(state, accel);
    const double total = accel.rowwise().sum().norm();
    const double bound = static_cast<double>(n) * n * 1e-12;
    worst_ratio = std::max(worst_ratio, total / bound);
    ++evaluated;
    if (total > bound) ++violations;
  }
  return {violations == 0, std::to_string(evaluated) + " states, " +
                               std::to_string(violations) +
                               " over bound, worst |sum|/bound=" + fmt(worst_ratio)};
}

// 9. Reflection suite and ray-sphere oracle.
Outcome reflection(Context&) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad_reflect = 0, bad_miss = 0, bad_hit = 0, compared = 0, hits = 0,
      misses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 2;
    fs::Obstacle o{fs::Vec(d), 0.1 + 2.9 * u(rng)};
    fs::Vec n(d), v(d);
    for (int k = 0; k < d; ++k) {
      o.center(k) = normal(rng);
      n(k) = normal(rng);
      v(k) = 5.0 * normal(rng);
    }
    n.normalize();
    const fs::Vec r = fs::reflect(v, o.center + o.radius * n, o);
    const fs::Vec tan_r = r - r.dot(n) * n;
    const fs::Vec tan_v = v - v.dot(n) * n;
    const double tol = 1e-12 * v.norm();
    if (std::abs(r.norm() - v.norm()) > tol ||
        std::abs(r.dot(n) + v.dot(n)) > tol || (tan_r - tan_v).norm() > tol) {
      ++bad_reflect;
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 2;
    fs::Obstacle o{fs::Vec(d), 0.2 + 1.8 * u(rng)};
    fs::Vec dir(d), v(d);
    for (int k = 0; k < d; ++k) {
      o.center(k) = 4.0 * u(rng) - 2.0;
      dir(k) = normal(rng);
      v(k) = normal(rng);
    }
    const fs::Vec x =
        o.center + (o.radius + 3.0 * u(rng) + 1e-3) * dir.normalized();
    if (trial % 2 == 0) {
      fs::Vec target(d);
      for (int k = 0; k < d; ++k) target(k) = normal(rng);
      v = o.center + 0.9 * o.radius * u(rng) * target.normalized() - x;
    }
    const fs::Vec w = o.center - x;
    const double along = w.dot(v.normalized());
    const double miss = std::sqrt(std::max(0.0, w.squaredNorm() - along * along));
    if (along > 0 && std::abs(miss - o.radius) < 1e-3 * o.radius) continue;
    ++compared;
    const auto hit = fs::ray_sphere_first_hit(x, v, o);
    const auto oracle = fs::testing::marched_hit(x, v, o);
    if (hit.hit != oracle.has_value()) {
      ++bad_hit;
    } else if (hit.hit) {
      ++hits;
      if ((hit.point - *oracle).norm() > 1e-6 * o.radius) ++bad_hit;
    } else {
      ++misses;
      if (fs::rf(x, v, o) != v) ++bad_miss;
    }
  }
  return {bad_reflect == 0 && bad_miss == 0 && bad_hit == 0 && compared >= 990,
          "reflections 1000 (bad " + std::to_string(bad_reflect) + "), rays " +
              std::to_string(compared) + " (hits " + std::to_string(hits) +
              ", misses " + std::to_string(misses) + ", oracle mismatches " +
              std::to_string(bad_hit) + ", non-identity misses " +
              std::to_string(bad_miss) + ")"};
}

// 10. Epsilon-graph against BFS, monotone in epsilon.
Outcome components(Context&) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> eps_u(0.2, 1.5);
  int mismatches = 0, non_monotone = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 2;
    const auto s = fs::testing::random_state(rng, dim, 50, 6.0);
    const double eps = eps_u(rng);
    if (fs::epsilon_components(s, eps) != fs::testing::bfs_components(s, eps)) {
      ++mismatches;
    }
    int previous = s.size() + 1;
    for (double e = 0.05; e < 12.0; e *= 1.3) {
      const int c = fs::epsilon_components(s, e);
      if (c > previous || c < 1) ++non_monotone;
      previous = c;
    }
    if (previous != 1) ++non_monotone;
  }
  return {mismatches == 0 && non_monotone == 0,
          "1000 instances, BFS mismatches " + std::to_string(mismatches) +
              ", ladder violations " + std::to_string(non_monotone)};
}

// 11. Integrator order, diffusion variance, worker determinism.
Outcome integrator(Context&) {
  std::string detail;
  bool pass = true;

  fs::SwarmState pair(2, 2);
  pair.positions.col(1) = fs::testing::vec2(1.2, 0.3);
  pair.velocities.col(0) = fs::testing::vec2(0.2, 0.1);
  pair.velocities.col(1) = fs::testing::vec2(-0.1, 0.3);
  const auto free = fs::validate(fs::testing::free_params(2));
  std::vector<fs::AgentMatrix> ends;
  for (double dt = 0.02; dt > 3e-4; dt /= 2.0) {
    const auto steps = fs::step_count(1.0, dt);
    const fs::BrownianPaths paths{1, 2, 2, steps};
    const auto traj = fs::simulate(pair, free, paths, dt, 1.0,
                                   static_cast<int>(steps));
    ends.push_back(traj.states.back().positions);
  }
  detail += "orders";
  for (std::size_t k = 0; k + 2 < ends.size(); ++k) {
    const double order = std::log2((ends[k] - ends[k + 1]).norm() /
                                   (ends[k + 1] - ends[k + 2]).norm());
    pass = pass && order >= 0.8 && order <= 1.2;
    detail += " " + fmt(order, 3);
  }

  const double sigma = 0.3, t_end = 1.0, dt = 1e-2;
  auto m = fs::testing::free_params(1);
  m.sigma = sigma;
  const auto diffusive = fs::validate(m);
  double sum = 0.0, sq = 0.0;
  int count = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const fs::BrownianPaths paths{seed, 1, 2, fs::step_count(t_end, dt)};
    const auto traj = fs::simulate(fs::SwarmState(2, 1), diffusive, paths, dt,
                                   t_end, 100);
    for (int k = 0; k < 2; ++k) {
      const double x = traj.states.back().positions(k, 0);
      sum += x;
      sq += x * x;
      ++count;
    }
  }
  const double mean = sum / count;
  const double variance = sq / count - mean * mean;
  const double expected = sigma * sigma * t_end;
  const bool var_ok = std::abs(variance - expected) <= 0.1 * expected;
  pass = pass && var_ok;
  detail += "; variance " + fmt(variance) + " vs " + fmt(expected);

  // Noisy runs fanned out on 1 and 8 workers must agree bit for bit.
  auto noisy = fs::testing::free_params(10);
  noisy.external_force = fs::LinearDrag{1.0};
  noisy.sigma = 0.05;
  const auto noisy_params = fs::validate(noisy);
  auto fan_out = [&](int workers) {
    std::vector<fs::Trajectory> out(16);
    fs::parallel_for(out.size(), workers, [&](std::size_t i) {
      const auto seed = static_cast<std::uint64_t>(i + 1);
      const auto initial = fs::random_school(2, 10, 2.0, 0.25, seed);
      const fs::BrownianPaths paths{seed, 10, 2, fs::step_count(2.0, 1e-3)};
      out[i] = fs::simulate(initial, noisy_params, paths, 1e-3, 2.0, 50);
    });
    return out;
  };
  const auto serial = fan_out(1);
  const auto parallel = fan_out(8);
  bool same = true;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    same = same && serial[i].states == parallel[i].states;
  }
  fs::CohesionProtocol quick;
  quick.n_trials = 4;
  quick.trial_seeds = fs::default_trial_seeds(4);
  quick.criteria = {0.5, 0.05, 8.0};
  quick.horizon = 10.0;
  quick.sigma_step = 0.01;
  quick.sigma_start = 0.01;
  quick.sigma_max = 2.0;
  auto school = fs::testing::free_params(10);
  school.external_force = fs::LinearDrag{1.0};
  const auto school_params = fs::validate(school);
  quick.workers = 1;
  const auto one = fs::estimate_critical_sigma(school_params, quick);
  quick.workers = 8;
  const auto eight = fs::estimate_critical_sigma(school_params, quick);
  same = same && one.sigma_bar == eight.sigma_bar &&
         one.levels.size() == eight.levels.size();
  for (std::size_t i = 0; same && i < one.levels.size(); ++i) {
    same = one.levels[i].sigma == eight.levels[i].sigma &&
           one.levels[i].trials_passed == eight.levels[i].trials_passed &&
           one.levels[i].all_pass == eight.levels[i].all_pass;
  }
  pass = pass && same;
  detail += std::string("; 1 vs 8 workers ") + (same ? "identical" : "DIFFER");
  return {pass, detail};
}

// 12. Classifier totality and rigid-motion invariance.
Outcome classifier(Context&) {
  const auto library = fs::testing::classifier_library();
  std::set<PatternLabel> seen;
  int wrong = 0, moved_wrong = 0, threw = 0;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal;
  const auto& criteria = fs::testing::kEncounterCriteria;
  for (const auto& c : library) {
    try {
      const auto label = fs::classify(c.summary, c.obstacle, c.axis, criteria);
      seen.insert(label);
      if (label != c.expected) ++wrong;
      const int dim = static_cast<int>(c.axis.size());
      for (int rep = 0; rep < 10; ++rep) {
        const Eigen::MatrixXd rot = fs::testing::random_rotation(rng, dim);
        fs::Vec shift(dim);
        for (int k = 0; k < dim; ++k) shift(k) = 20.0 * normal(rng);
        auto moved = c.summary;
        for (auto& x : moved.centroid) x = rot * x + shift;
        for (auto& v : moved.mean_velocity) v = rot * v;
        const fs::Obstacle o{rot * c.obstacle.center + shift, c.obstacle.radius};
        if (fs::classify(moved, o, rot * c.axis, criteria) != label) ++moved_wrong;
      }
    } catch (const std::exception&) {
      ++threw;
    }
  }
  const bool every_row = seen.size() == 6;
  return {library.size() >= 20 && wrong == 0 && moved_wrong == 0 && threw == 0 &&
              every_row,
          std::to_string(library.size()) + " summaries, " +
              std::to_string(seen.size()) + "/6 labels, wrong " +
              std::to_string(wrong) + ", changed under motion " +
              std::to_string(moved_wrong) + ", threw " + std::to_string(threw)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome(Context&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fishschool acceptance criteria"};
  int workers = 8;
  std::vector<int> only;
  std::string cache_dir;
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--only", only, "Run only these criteria (1-12)")
      ->check(CLI::Range(1, 12))
      ->delimiter(',');
  app.add_option("--cache-dir", cache_dir, "Directory for relaxed schools");
  CLI11_PARSE(app, argc, argv);

  Context ctx{workers, fh::BootstrapCache(cache_dir.empty()
                                              ? std::nullopt
                                              : std::optional<std::filesystem::path>(cache_dir)),
              {}, {}};
  const std::vector<Criterion> criteria{
      {1, "four-pattern panel", panel},
      {2, "exponent sweep staircase", exponent_sweep},
      {3, "speed sweep staircase", speed_sweep},
      {4, "critical-distance sweep staircase", rcrit_sweep},
      {5, "cohesiveness magnitude", cohesion_magnitude},
      {6, "cohesiveness orderings", cohesion_orderings},
      {7, "schooling spot checks", spot_checks},
      {8, "momentum conservation", momentum},
      {9, "reflection suite", reflection},
      {10, "epsilon-graph oracle", components},
      {11, "integrator checks", integrator},
      {12, "classifier library", classifier},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(ctx);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::cout << "criterion " << c.id << " " << (out.pass ? "PASS" : "FAIL")
              << " " << c.title << " [" << fmt(seconds, 3) << " s] :: "
              << out.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all selected criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
