#pragma once

#include "pop3d/env.hpp"
#include "pop3d/rng.hpp"

namespace pop3d {

struct ChainMdpConfig {
  std::size_t n_states = 8;
  double step_penalty = -0.01;
  double goal_reward = 1.0;
  std::size_t horizon = 32;
};

/// Deterministic corridor: start at state 0, action 1 moves right, action 0
/// moves left (clamped at 0). Entering state n-1 pays goal_reward and
/// terminates; every step pays step_penalty. Observations are one-hot.
class ChainMdp final : public Env {
 public:
  explicit ChainMdp(const ChainMdpConfig& config);

  const EnvSpec& spec() const override { return spec_; }
  const ChainMdpConfig& config() const { return config_; }
  void seed(std::uint64_t seed) override { rng_ = Rng(seed); }
  std::vector<double> reset() override;
  StepResult step(const Action& action) override;

  std::array<std::uint64_t, 4> rng_state() const override { return rng_.state(); }
  void set_rng_state(const std::array<std::uint64_t, 4>& state) override { rng_.set_state(state); }

 private:
  std::vector<double> one_hot(std::size_t state) const;

  ChainMdpConfig config_;
  EnvSpec spec_;
  Rng rng_;  // the dynamics are deterministic; kept for interface parity
  std::size_t state_ = 0;
  std::size_t steps_ = 0;
  double episode_return_ = 0.0;
  bool active_ = false;
};

std::unique_ptr<Env> chain_mdp(std::size_t n_states, double step_penalty, double goal_reward,
                               std::size_t horizon);

}  // namespace pop3d
