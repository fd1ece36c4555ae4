#include "fishschool/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fishschool/error.hpp"

namespace fishschool::harness {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::kConfigError, what);
}

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kSimulate, "simulate"},
    {ExperimentKind::kPatternRun, "pattern_run"},
    {ExperimentKind::kSweepExponent, "sweep_exponent"},
    {ExperimentKind::kSweepSpeed, "sweep_speed"},
    {ExperimentKind::kSweepCriticalDistance, "sweep_rcrit"},
    {ExperimentKind::kCohesion, "cohesion"},
    {ExperimentKind::kBootstrap, "bootstrap"},
};

/// Reads fields of one JSON object and rejects any key nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) config_error(path_ + ": expected an object");
  }

  ~ObjectReader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) config_error("unknown key " + field(key));
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }

  const json& at(const std::string& key) {
    if (!has(key)) config_error("missing required key " + field(key));
    return node_.at(key);
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number()) config_error(field(key) + ": expected a number");
    out = v.get<double>();
  }

  void required(const std::string& key, double& out) {
    at(key);
    number(key, out);
  }

  void integer(const std::string& key, int& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) {
      config_error(field(key) + ": expected an integer");
    }
    out = v.get<int>();
  }

  void string(const std::string& key, std::string& out) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (!v.is_string()) config_error(field(key) + ": expected a string");
    out = v.get<std::string>();
  }

  const std::string& path() const noexcept { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

Vec read_vector(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty() || node.size() > 3) {
    config_error(path + ": expected an array of 1..3 numbers");
  }
  Vec out(static_cast<Eigen::Index>(node.size()));
  for (std::size_t k = 0; k < node.size(); ++k) {
    if (!node[k].is_number()) config_error(path + ": expected numbers");
    out(static_cast<Eigen::Index>(k)) = node[k].get<double>();
  }
  return out;
}

ExternalForce read_force(const json& node) {
  ObjectReader r(node, "model.force");
  std::string type = "zero";
  r.string("type", type);
  if (type == "zero") return ZeroForce{};
  if (type == "drag") {
    LinearDrag drag;
    r.number("kappa", drag.kappa);
    return drag;
  }
  if (type == "obstacle") {
    ObstacleAvoidance avoid;
    r.number("gamma", avoid.gamma);
    r.number("P", avoid.p_obs);
    r.number("Q", avoid.q_obs);
    r.number("R", avoid.r_obs);
    return avoid;
  }
  config_error("model.force.type: expected zero|drag|obstacle, got " + type);
}

ModelParams read_model(const json& node) {
  ObjectReader r(node, "model");
  ModelParams m;
  r.integer("n_agents", m.n_agents);
  r.integer("dim", m.dim);
  r.number("alpha", m.alpha);
  r.number("beta", m.beta);
  r.number("p", m.p_exp);
  r.number("q", m.q_exp);
  r.number("r", m.r_crit);
  r.number("sigma", m.sigma);
  if (r.has("force")) m.external_force = read_force(r.at("force"));
  return m;
}

json write_force(const ExternalForce& force) {
  if (const auto* drag = std::get_if<LinearDrag>(&force)) {
    return {{"type", "drag"}, {"kappa", drag->kappa}};
  }
  if (const auto* avoid = std::get_if<ObstacleAvoidance>(&force)) {
    return {{"type", "obstacle"},
            {"gamma", avoid->gamma},
            {"P", avoid->p_obs},
            {"Q", avoid->q_obs},
            {"R", avoid->r_obs}};
  }
  return {{"type", "zero"}};
}

json write_vector(const Vec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

bool involves_avoidance(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kPatternRun:
    case ExperimentKind::kSweepExponent:
    case ExperimentKind::kSweepSpeed:
    case ExperimentKind::kSweepCriticalDistance:
      return true;
    default:
      return false;
  }
}

double round_grid(double x) { return std::round(x * 1e9) / 1e9; }

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "simulate";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& [k, text] : kKindNames) {
    if (text == name) return k;
  }
  return std::nullopt;
}

std::vector<double> GridSpec::values() const {
  if (!explicit_values.empty()) return explicit_values;
  std::vector<double> out;
  const auto count =
      static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  out.reserve(static_cast<std::size_t>(count + 1));
  for (long long k = 0; k <= count; ++k) {
    out.push_back(round_grid(lo + static_cast<double>(k) * step));
  }
  return out;
}

ExperimentConfig parse_config(std::string_view json_text,
                              std::optional<ExperimentKind> default_kind) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  if (default_kind) cfg.kind = *default_kind;
  ObjectReader top(doc, "");
  if (top.has("kind")) {
    std::string name;
    top.string("kind", name);
    const auto kind = parse_kind(name);
    if (!kind) config_error("kind: unknown experiment kind " + name);
    cfg.kind = *kind;
  }
  if (top.has("model")) cfg.model = read_model(top.at("model"));

  if (top.has("obstacle")) {
    ObjectReader r(top.at("obstacle"), "obstacle");
    Obstacle obstacle;
    obstacle.center = read_vector(r.at("center"), "obstacle.center");
    r.number("radius", obstacle.radius);
    r.number("radius_factor", cfg.radius_factor);
    cfg.obstacle = obstacle;
  }
  if (top.has("criteria")) {
    ObjectReader r(top.at("criteria"), "criteria");
    r.number("epsilon", cfg.criteria.epsilon);
    r.number("theta", cfg.criteria.theta);
    r.number("t_onset", cfg.criteria.t_onset);
  }
  if (top.has("grid")) {
    ObjectReader r(top.at("grid"), "grid");
    GridSpec grid;
    if (r.has("values")) {
      const json& values = r.at("values");
      if (!values.is_array() || values.empty()) {
        config_error("grid.values: expected a non-empty array");
      }
      for (const auto& v : values) {
        if (!v.is_number()) config_error("grid.values: expected numbers");
        grid.explicit_values.push_back(v.get<double>());
      }
    } else {
      r.required("lo", grid.lo);
      r.required("hi", grid.hi);
      r.required("step", grid.step);
    }
    cfg.grid = grid;
  }
  if (top.has("solver")) {
    ObjectReader r(top.at("solver"), "solver");
    r.number("dt", cfg.solver.dt);
    r.number("t_end", cfg.solver.t_end);
    r.integer("record_every", cfg.solver.record_every);
  }
  if (top.has("seeds")) {
    const json& seeds = top.at("seeds");
    if (!seeds.is_array() || seeds.empty()) {
      config_error("seeds: expected a non-empty array of integers");
    }
    cfg.seeds.clear();
    for (const auto& s : seeds) {
      if (!s.is_number_unsigned()) {
        config_error("seeds: expected non-negative integers");
      }
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  top.string("output_path", cfg.output_path);
  if (top.has("placement")) {
    ObjectReader r(top.at("placement"), "placement");
    r.number("gap", cfg.placement.gap);
    r.number("speed", cfg.placement.speed);
  }
  if (top.has("bootstrap")) {
    ObjectReader r(top.at("bootstrap"), "bootstrap");
    r.number("kappa", cfg.bootstrap.kappa);
    r.number("p", cfg.bootstrap.p_exp);
    r.number("q", cfg.bootstrap.q_exp);
    r.number("t_max", cfg.bootstrap.t_max);
    r.number("dwell", cfg.bootstrap.dwell);
    r.number("tolerance", cfg.bootstrap.tolerance);
  }
  if (top.has("cohesion")) {
    ObjectReader r(top.at("cohesion"), "cohesion");
    r.integer("n_trials", cfg.cohesion.n_trials);
    r.number("sigma_step", cfg.cohesion.sigma_step);
    r.number("sigma_start", cfg.cohesion.sigma_start);
    r.number("sigma_max", cfg.cohesion.sigma_max);
    r.number("horizon", cfg.cohesion.horizon);
    r.number("coarse_step", cfg.cohesion.coarse_step);
    r.number("box_side", cfg.cohesion.box_side);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<ExperimentKind> default_kind) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read config " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), default_kind);
}

std::string dump_config(const ExperimentConfig& cfg) {
  const ModelParams& m = cfg.model;
  json doc;
  doc["kind"] = std::string(to_string(cfg.kind));
  doc["model"] = {{"n_agents", m.n_agents}, {"dim", m.dim},
                  {"alpha", m.alpha},       {"beta", m.beta},
                  {"p", m.p_exp},           {"q", m.q_exp},
                  {"r", m.r_crit},          {"sigma", m.sigma},
                  {"force", write_force(m.external_force)}};
  if (cfg.obstacle) {
    doc["obstacle"] = {{"center", write_vector(cfg.obstacle->center)},
                       {"radius", cfg.obstacle->radius},
                       {"radius_factor", cfg.radius_factor}};
  }
  doc["criteria"] = {{"epsilon", cfg.criteria.epsilon},
                     {"theta", cfg.criteria.theta},
                     {"t_onset", cfg.criteria.t_onset}};
  if (cfg.grid) {
    if (!cfg.grid->explicit_values.empty()) {
      doc["grid"] = {{"values", cfg.grid->explicit_values}};
    } else {
      doc["grid"] = {
          {"lo", cfg.grid->lo}, {"hi", cfg.grid->hi}, {"step", cfg.grid->step}};
    }
  }
  doc["solver"] = {{"dt", cfg.solver.dt},
                   {"t_end", cfg.solver.t_end},
                   {"record_every", cfg.solver.record_every}};
  doc["seeds"] = cfg.seeds;
  doc["output_path"] = cfg.output_path;
  doc["placement"] = {{"gap", cfg.placement.gap},
                      {"speed", cfg.placement.speed}};
  doc["bootstrap"] = {{"kappa", cfg.bootstrap.kappa},
                      {"p", cfg.bootstrap.p_exp},
                      {"q", cfg.bootstrap.q_exp},
                      {"t_max", cfg.bootstrap.t_max},
                      {"dwell", cfg.bootstrap.dwell},
                      {"tolerance", cfg.bootstrap.tolerance}};
  doc["cohesion"] = {{"n_trials", cfg.cohesion.n_trials},
                     {"sigma_step", cfg.cohesion.sigma_step},
                     {"sigma_start", cfg.cohesion.sigma_start},
                     {"sigma_max", cfg.cohesion.sigma_max},
                     {"horizon", cfg.cohesion.horizon},
                     {"coarse_step", cfg.cohesion.coarse_step},
                     {"box_side", cfg.cohesion.box_side}};
  return doc.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(dump_config(config))));
  return buf;
}

ModelParams resolved_model(const ExperimentConfig& config) {
  ModelParams m = config.model;
  if (auto* avoid = std::get_if<ObstacleAvoidance>(&m.external_force)) {
    if (config.obstacle) avoid->obstacle = *config.obstacle;
  }
  return m;
}

void check(const ExperimentConfig& cfg) {
  const bool avoid_force =
      std::holds_alternative<ObstacleAvoidance>(cfg.model.external_force);
  const bool needs_obstacle = involves_avoidance(cfg.kind) ||
                              (cfg.kind == ExperimentKind::kSimulate &&
                               avoid_force);
  if (needs_obstacle != cfg.obstacle.has_value()) {
    config_error(needs_obstacle
                     ? "obstacle: required for this experiment kind"
                     : "obstacle: not allowed for this experiment kind");
  }
  if (involves_avoidance(cfg.kind) && !avoid_force) {
    config_error("model.force.type: obstacle experiments need type=obstacle");
  }
  if ((cfg.kind == ExperimentKind::kCohesion ||
       cfg.kind == ExperimentKind::kBootstrap) &&
      !std::holds_alternative<LinearDrag>(cfg.model.external_force)) {
    config_error("model.force.type: " + std::string(to_string(cfg.kind)) +
                 " needs type=drag");
  }
  if (cfg.grid && cfg.grid->explicit_values.empty()) {
    if (!(cfg.grid->lo < cfg.grid->hi)) config_error("grid: lo<hi violated");
    if (!(cfg.grid->step > 0.0)) config_error("grid: step>0 violated");
  }
  if (!(cfg.solver.dt > 0.0)) config_error("solver.dt: dt>0 violated");
  if (cfg.solver.record_every < 1) {
    config_error("solver.record_every: must be >= 1");
  }
  if (!(cfg.placement.gap > 0.0)) config_error("placement.gap: must be > 0");
  if (!(cfg.placement.speed >= 0.0)) {
    config_error("placement.speed: must be >= 0");
  }
  if (!(cfg.bootstrap.kappa > 0.0)) config_error("bootstrap.kappa: must be > 0");
  if (!(cfg.bootstrap.t_max > 0.0)) config_error("bootstrap.t_max: must be > 0");
  if (!(cfg.bootstrap.dwell >= 0.0)) config_error("bootstrap.dwell: must be >= 0");
  if (!(cfg.bootstrap.tolerance >= 0.0)) {
    config_error("bootstrap.tolerance: must be >= 0");
  }
  if (cfg.obstacle && cfg.kind == ExperimentKind::kSweepCriticalDistance &&
      !(cfg.radius_factor > 0.0)) {
    config_error("obstacle.radius_factor: must be > 0");
  }
  try {
    ModelParams m = resolved_model(cfg);
    if (cfg.kind == ExperimentKind::kSweepCriticalDistance) {
      // radius is derived per grid point
      std::get<ObstacleAvoidance>(m.external_force).obstacle.radius = 1.0;
    }
    validate(m);
    validate(cfg.criteria);
  } catch (const Error& e) {
    config_error(std::string("model: ") + e.what());
  }
}

GridSpec default_grid(ExperimentKind kind, bool full) {
  GridSpec g;
  switch (kind) {
    case ExperimentKind::kSweepExponent:
      g = full ? GridSpec{1.001, 8.0, 0.001, {}} : GridSpec{1.2, 8.0, 0.1, {}};
      break;
    case ExperimentKind::kSweepSpeed:
      g = full ? GridSpec{0.001, 20.0, 0.001, {}}
               : GridSpec{0.25, 20.0, 0.25, {}};
      break;
    case ExperimentKind::kSweepCriticalDistance:
      g = GridSpec{0.2, 2.8, 0.1, {}};
      break;
    default:
      config_error("no default grid for " + std::string(to_string(kind)));
  }
  return g;
}

}  // namespace fishschool::harness
