#pragma once

#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "fishschool/model.hpp"
#include "fishschool/sde.hpp"

namespace fishschool::harness {

/// Relaxed schooling states keyed by (relaxation parameters, seed).
///
/// Entries live in memory for the lifetime of the cache and, when a
/// directory is given, as <dir>/<key>.json so later runs skip relaxation.
/// Safe to share between worker threads; concurrent requests for one key
/// relax once.
class BootstrapCache {
 public:
  explicit BootstrapCache(std::optional<std::filesystem::path> dir = {});

  SwarmState get(const ValidatedParams& params,
                 const SchoolingCriteria& criteria, std::uint64_t seed,
                 const RelaxOptions& options = {});

  static std::string key(const ValidatedParams& params,
                         const SchoolingCriteria& criteria, std::uint64_t seed,
                         const RelaxOptions& options);

  /// Number of relax_to_schooling calls made by this instance.
  int relaxations() const;
  int disk_hits() const;

 private:
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_future<SwarmState>> entries_;
  int relaxations_ = 0;
  int disk_hits_ = 0;
};

}  // namespace fishschool::harness
