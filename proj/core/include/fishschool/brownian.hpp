#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fishschool/model.hpp"

namespace fishschool {

/// Source of per-step noise: one d x N block per call. Values are the
/// unscaled increments; the integrator applies sigma and sqrt(dt).
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual void next(AgentMatrix& out) = 0;
};

/// Independent standard-normal increments for N agents in R^d, fully
/// determined by the seed. The increments are regenerated on demand rather
/// than stored, since a cohesion trial needs tens of thousands of steps.
struct BrownianPaths {
  std::uint64_t seed = 0;
  int n_agents = 0;
  int dim = 2;
  std::int64_t n_steps = 0;

  /// All increments, step-major. Meant for tests and short runs.
  std::vector<AgentMatrix> materialize() const;
};

class BrownianStream final : public NoiseSource {
 public:
  explicit BrownianStream(const BrownianPaths& paths);

  void next(AgentMatrix& out) override;
  std::int64_t produced() const noexcept { return produced_; }

 private:
  BrownianPaths paths_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::int64_t produced_ = 0;
};

/// Replays a recorded sequence of increments (e.g. pre-scaled ones).
class RecordedNoise final : public NoiseSource {
 public:
  explicit RecordedNoise(std::vector<AgentMatrix> increments)
      : increments_(std::move(increments)) {}

  void next(AgentMatrix& out) override;

 private:
  std::vector<AgentMatrix> increments_;
  std::size_t cursor_ = 0;
};

/// Always zero; used for deterministic runs where sigma == 0.
class ZeroNoise final : public NoiseSource {
 public:
  ZeroNoise(int dim, int n_agents) : dim_(dim), n_agents_(n_agents) {}
  void next(AgentMatrix& out) override;

 private:
  int dim_;
  int n_agents_;
};

/// SplitMix64 finaliser, used to derive independent sub-seeds (e.g. initial
/// positions vs. Wiener path) from one trial seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace fishschool
