#include "fishschool/harness/bootstrap_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fishschool/error.hpp"
#include "fishschool/harness/config.hpp"
#include "fishschool/harness/serialize.hpp"

namespace fishschool::harness {
namespace {

using nlohmann::json;

json force_fields(const ExternalForce& force) {
  if (const auto* drag = std::get_if<LinearDrag>(&force)) {
    return {{"type", "drag"}, {"kappa", drag->kappa}};
  }
  if (const auto* obs = std::get_if<ObstacleAvoidance>(&force)) {
    return {{"type", "obstacle"}, {"gamma", obs->gamma}};
  }
  return {{"type", "zero"}};
}

std::optional<SwarmState> read_entry(const std::filesystem::path& file,
                                     const std::string& key) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const json doc = json::parse(buffer.str());
    if (doc.at("key").get<std::string>() != key) return std::nullopt;
    return swarm_state_from_json(doc.at("state").dump());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_entry(const std::filesystem::path& dir, const std::string& key,
                 const SwarmState& state) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create cache directory " + dir.string());
  }
  const auto file = dir / (key + ".json");
  const auto tmp = dir / (key + ".json.tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    json doc = {{"key", key}, {"state", json::parse(to_json(state))}};
    out << doc.dump() << '\n';
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot write " + file.string());
}

}  // namespace

BootstrapCache::BootstrapCache(std::optional<std::filesystem::path> dir)
    : dir_(std::move(dir)) {}

std::string BootstrapCache::key(const ValidatedParams& params,
                                const SchoolingCriteria& criteria,
                                std::uint64_t seed,
                                const RelaxOptions& options) {
  const ModelParams& m = params.get();
  json doc = {{"n", m.n_agents},
              {"dim", m.dim},
              {"alpha", m.alpha},
              {"beta", m.beta},
              {"p", m.p_exp},
              {"q", m.q_exp},
              {"r", m.r_crit},
              {"force", force_fields(m.external_force)},
              {"epsilon", criteria.epsilon},
              {"theta", criteria.theta},
              {"dt", options.dt},
              {"t_max", options.t_max},
              {"dwell", options.dwell},
              {"check_every", options.check_every},
              {"box_side", options.box_side},
              {"tolerance", options.tolerance}};
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(doc.dump())));
  return std::string(hex) + "-" + std::to_string(seed);
}

SwarmState BootstrapCache::get(const ValidatedParams& params,
                               const SchoolingCriteria& criteria,
                               std::uint64_t seed,
                               const RelaxOptions& options) {
  const std::string k = key(params, criteria, seed, options);
  std::promise<SwarmState> promise;
  std::shared_future<SwarmState> pending;
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(k); it != entries_.end()) {
      pending = it->second;
    } else {
      entries_.emplace(k, promise.get_future().share());
    }
  }
  if (pending.valid()) return pending.get();
  try {
    std::optional<SwarmState> state;
    if (dir_) state = read_entry(*dir_ / (k + ".json"), k);
    if (state) {
      std::lock_guard lock(mutex_);
      ++disk_hits_;
    } else {
      {
        std::lock_guard lock(mutex_);
        ++relaxations_;
      }
      state = relax_to_schooling(params, criteria, seed, options);
      if (dir_) write_entry(*dir_, k, *state);
    }
    promise.set_value(*state);
    return *state;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

int BootstrapCache::relaxations() const {
  std::lock_guard lock(mutex_);
  return relaxations_;
}

int BootstrapCache::disk_hits() const {
  std::lock_guard lock(mutex_);
  return disk_hits_;
}

}  // namespace fishschool::harness
