#include "fishschool/brownian.hpp"

#include "fishschool/error.hpp"

namespace fishschool {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<AgentMatrix> BrownianPaths::materialize() const {
  BrownianStream stream(*this);
  std::vector<AgentMatrix> out(static_cast<std::size_t>(n_steps));
  for (auto& block : out) stream.next(block);
  return out;
}

BrownianStream::BrownianStream(const BrownianPaths& paths)
    : paths_(paths), engine_(paths.seed) {}

void BrownianStream::next(AgentMatrix& out) {
  if (produced_ >= paths_.n_steps) {
    throw Error(ErrorCode::kInvalidParams,
                "Brownian path exhausted: n_steps too small for horizon");
  }
  out.resize(paths_.dim, paths_.n_agents);
  double* data = out.data();
  const auto count = out.size();
  for (Eigen::Index k = 0; k < count; ++k) data[k] = normal_(engine_);
  ++produced_;
}

void RecordedNoise::next(AgentMatrix& out) {
  if (cursor_ >= increments_.size()) {
    throw Error(ErrorCode::kInvalidParams, "recorded noise exhausted");
  }
  out = increments_[cursor_++];
}

void ZeroNoise::next(AgentMatrix& out) {
  out.setZero(dim_, n_agents_);
}

}  // namespace fishschool
