#include "fishschool/harness/run.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fishschool/brownian.hpp"
#include "fishschool/harness/bootstrap_cache.hpp"
#include "fishschool/harness/serialize.hpp"
#include "fishschool/harness/sweeps.hpp"
#include "fishschool/metrics.hpp"
#include "fishschool/parallel.hpp"
#include "fishschool/patterns.hpp"

namespace fishschool::harness {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

fs::path output_dir(const ExperimentConfig& config, const RunOptions& options) {
  return options.out_dir.empty() ? fs::path(config.output_path)
                                 : options.out_dir;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "cannot create directory " + dir.string());
  }
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + file.string());
}

template <class Writer>
void write_stream(const fs::path& file, Writer&& writer) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + file.string());
  writer(out);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + file.string());
}

json final_sample(const TrajectorySummary& s) {
  if (s.size() == 0) return nullptr;
  const std::size_t k = s.size() - 1;
  return {{"t", s.times[k]},
          {"n_eps", s.n_components[k]},
          {"sigma_v", s.sigma_v[k]},
          {"diameter", s.diameter[k]}};
}

void write_trajectory(const fs::path& dir, const Trajectory& trajectory,
                      double epsilon, bool csv) {
  write_stream(dir / "trajectory.jsonl", [&](std::ostream& out) {
    write_trajectory_jsonl(out, trajectory, epsilon);
  });
  if (csv) {
    write_stream(dir / "trajectory.csv", [&](std::ostream& out) {
      write_trajectory_csv(out, trajectory);
    });
  }
}

int run_simulate(const ExperimentConfig& config, const RunOptions& options,
                 const fs::path& dir, const std::string& hash) {
  const auto params = validate(resolved_model(config));
  const std::uint64_t seed = config.seeds.front();
  CohesionProtocol protocol = cohesion_protocol(config);
  protocol.horizon = config.solver.t_end > 0.0 ? config.solver.t_end
                                               : config.criteria.t_onset + 5.0;
  const SwarmState initial = trial_initial_state(params, seed, protocol);
  SimulationOptions sim;
  sim.dt = config.solver.dt;
  sim.t_end = protocol.horizon;
  sim.record_every = config.solver.record_every;
  Trajectory trajectory;
  if (params->sigma > 0.0) {
    BrownianStream noise(trial_paths(params, seed, protocol));
    trajectory = simulate(initial, params, noise, sim);
  } else {
    ZeroNoise noise(params->dim, params->n_agents);
    trajectory = simulate(initial, params, noise, sim);
  }
  const auto summary = summarize(trajectory, config.criteria.epsilon);
  write_trajectory(dir, trajectory, config.criteria.epsilon, options.csv);
  json doc = {{"config_hash", hash},
              {"kind", "simulate"},
              {"seed", seed},
              {"termination", termination_name(trajectory.termination)},
              {"n_samples", summary.size()},
              {"schooling", is_schooling(summary, config.criteria)},
              {"final", final_sample(summary)}};
  write_text(dir / "summary.json", doc.dump(2));
  return kExitOk;
}

int run_pattern(const ExperimentConfig& config, const RunOptions& options,
                const fs::path& dir, const std::string& hash) {
  BootstrapCache cache(dir / "bootstrap_cache");
  const Encounter e = pattern_run(config, cache);
  write_trajectory(dir, e.trajectory, config.criteria.epsilon, options.csv);
  const auto& obstacle =
      std::get<ObstacleAvoidance>(resolved_model(config).external_force)
          .obstacle;
  Vec axis = Vec::Zero(config.model.dim);
  axis(0) = 1.0;
  json doc = {{"config_hash", hash},
              {"kind", std::string(to_string(config.kind))},
              {"seed", config.seeds.front()},
              {"termination", termination_name(e.trajectory.termination)},
              {"n_samples", e.summary.size()},
              {"label", std::string(to_string(e.label))},
              {"final", final_sample(e.summary)}};
  if (e.summary.size() >= 2) {
    const auto f =
        encounter_features(e.summary, obstacle, axis, config.criteria);
    doc["passed"] = f.passed;
    doc["ever_broke"] = f.ever_broke;
    doc["reunited"] = f.reunited;
    doc["final_components"] = f.final_components;
  }
  write_text(dir / "summary.json", doc.dump(2));
  return kExitOk;
}

int run_sweep(const ExperimentConfig& config, const RunOptions& options,
              const fs::path& dir) {
  const GridSpec grid =
      config.grid ? *config.grid : default_grid(config.kind, options.full);
  const auto values = grid.values();
  BootstrapCache cache(dir / "bootstrap_cache");
  const int workers = resolve_workers(options.workers);
  SweepReport report;
  switch (config.kind) {
    case ExperimentKind::kSweepExponent:
      report = sweep_exponent(config, values, cache, workers);
      break;
    case ExperimentKind::kSweepSpeed:
      report = sweep_speed(config, values, cache, workers);
      break;
    default:
      report = sweep_critical_distance(config, values, cache, workers);
      break;
  }
  write_text(dir / "report.json", to_json(report));
  const bool all_failed =
      !report.errors.empty() &&
      std::all_of(report.errors.begin(), report.errors.end(),
                  [](const std::string& e) { return !e.empty(); });
  if (all_failed) {
    std::cerr << error_record("AllGridPointsFailed", report.errors.front(),
                              kExitNumerical)
              << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int run_cohesion(const ExperimentConfig& config, const RunOptions& options,
                 const fs::path& dir, const std::string& hash) {
  const auto params = validate(resolved_model(config));
  const auto protocol =
      cohesion_protocol(config, resolve_workers(options.workers));
  CohesionRecord record{hash, estimate_critical_sigma(params, protocol)};
  write_text(dir / "report.json", to_json(record));
  return kExitOk;
}

int run_bootstrap(const ExperimentConfig& config, const fs::path& dir,
                  const std::string& hash) {
  BootstrapCache cache(dir / "bootstrap_cache");
  const auto params = bootstrap_params(config, config.model.r_crit);
  const auto options = bootstrap_options(config);
  const std::uint64_t seed = config.seeds.front();
  const SwarmState state = cache.get(params, config.criteria, seed, options);
  json doc = {{"config_hash", hash},
              {"cache_key", BootstrapCache::key(params, config.criteria, seed,
                                                options)},
              {"seed", seed},
              {"diameter", diameter(state)},
              {"n_eps", epsilon_components(state, config.criteria.epsilon)},
              {"state", json::parse(to_json(state))}};
  write_text(dir / "bootstrap.json", doc.dump(2));
  return kExitOk;
}

int report_error(const Error& e, const fs::path& dir) {
  const int code = exit_code_for(e.code());
  const std::string record = error_record(to_string(e.code()), e.what(), code);
  std::cerr << record << '\n';
  if (code != kExitIo && !dir.empty()) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (fs::is_directory(dir, ec)) {
      std::ofstream out(dir / "error.json");
      out << record << '\n';
    }
  }
  return code;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidParams:
    case ErrorCode::kGapTooSmall:
    case ErrorCode::kHorizonTooShort:
      return kExitConfig;
    case ErrorCode::kIoError:
      return kExitIo;
    default:
      return kExitNumerical;
  }
}

ExperimentConfig apply_overrides(ExperimentConfig config,
                                 const RunOptions& options) {
  if (options.seed) config.seeds = {*options.seed};
  if (options.dt) config.solver.dt = *options.dt;
  check(config);
  return config;
}

CohesionProtocol cohesion_protocol(const ExperimentConfig& config,
                                   int workers) {
  CohesionProtocol p;
  const CohesionSpec& c = config.cohesion;
  p.n_trials = c.n_trials;
  p.sigma_step = c.sigma_step;
  p.sigma_start = c.sigma_start;
  p.sigma_max = c.sigma_max;
  p.criteria = config.criteria;
  p.horizon = c.horizon > 0.0 ? c.horizon : config.criteria.t_onset + 5.0;
  p.dt = config.solver.dt;
  p.record_every = config.solver.record_every;
  p.box_side = c.box_side;
  p.coarse_step = c.coarse_step;
  p.workers = workers;
  if (static_cast<int>(config.seeds.size()) == c.n_trials) {
    p.trial_seeds = config.seeds;
  } else {
    const std::uint64_t base = config.seeds.empty() ? 1 : config.seeds.front();
    for (int i = 0; i < c.n_trials; ++i) {
      p.trial_seeds.push_back(base + static_cast<std::uint64_t>(i));
    }
  }
  return p;
}

int run(const ExperimentConfig& config_in, const RunOptions& options) {
  fs::path dir;
  try {
    const ExperimentConfig config = apply_overrides(config_in, options);
    dir = output_dir(config, options);
    ensure_dir(dir);
    const std::string hash = config_hash(config);
    switch (config.kind) {
      case ExperimentKind::kSimulate:
        if (config.obstacle) return run_pattern(config, options, dir, hash);
        return run_simulate(config, options, dir, hash);
      case ExperimentKind::kPatternRun:
        return run_pattern(config, options, dir, hash);
      case ExperimentKind::kSweepExponent:
      case ExperimentKind::kSweepSpeed:
      case ExperimentKind::kSweepCriticalDistance:
        return run_sweep(config, options, dir);
      case ExperimentKind::kCohesion:
        return run_cohesion(config, options, dir, hash);
      case ExperimentKind::kBootstrap:
        return run_bootstrap(config, dir, hash);
    }
    return kExitConfig;
  } catch (const Error& e) {
    return report_error(e, dir);
  }
}

int classify_file(const ExperimentConfig& config_in, const fs::path& input,
                  const RunOptions& options) {
  fs::path dir;
  try {
    const ExperimentConfig config = apply_overrides(config_in, options);
    if (!config.obstacle) {
      throw Error(ErrorCode::kConfigError,
                  "obstacle: classify needs an obstacle");
    }
    std::ifstream in(input);
    if (!in) throw Error(ErrorCode::kIoError, "cannot read " + input.string());
    const auto states = read_trajectory_jsonl(in);
    TrajectorySummary summary;
    for (const auto& s : states) summary.append(s, config.criteria.epsilon);
    dir = output_dir(config, options);
    ensure_dir(dir);
    Vec axis = Vec::Zero(config.model.dim);
    axis(0) = 1.0;
    const auto label =
        classify(summary, *config.obstacle, axis, config.criteria);
    json doc = {{"config_hash", config_hash(config)},
                {"input", input.string()},
                {"n_samples", summary.size()},
                {"label", std::string(to_string(label))}};
    write_text(dir / "classification.json", doc.dump(2));
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, dir);
  }
}

int run_file(const fs::path& config_path, const RunOptions& options,
             const std::vector<ExperimentKind>& accepted) {
  try {
    ExperimentConfig config = load_config(
        config_path, accepted.empty()
                         ? std::nullopt
                         : std::optional<ExperimentKind>(accepted.front()));
    if (!accepted.empty() &&
        std::find(accepted.begin(), accepted.end(), config.kind) ==
            accepted.end()) {
      std::string names;
      for (const auto kind : accepted) {
        names += (names.empty() ? "" : "|") + std::string(to_string(kind));
      }
      throw Error(ErrorCode::kConfigError,
                  "kind: config is '" + std::string(to_string(config.kind)) +
                      "' but this command runs " + names);
    }
    return run(config, options);
  } catch (const Error& e) {
    return report_error(e, options.out_dir);
  }
}

}  // namespace fishschool::harness
