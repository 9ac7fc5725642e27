#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "pop3d/distributions.hpp"

namespace pop3d {

enum class ActionKind { Discrete, Continuous };

struct ActionSpace {
  ActionKind kind = ActionKind::Discrete;
  std::size_t dim = 0;  // K actions or d dimensions
};

struct EnvSpec {
  std::size_t obs_dim = 0;
  ActionSpace action_space;
  std::size_t max_episode_steps = 1;
};

struct StepResult {
  /// True successor observation; the episode-final one when done().
  std::vector<double> observation;
  double reward = 0.0;
  bool terminal = false;   // genuine episode end, no bootstrapping
  bool truncated = false;  // horizon cutoff, bootstrap the future value
  double episode_return_so_far = 0.0;

  bool done() const { return terminal || truncated; }
};

class Env {
 public:
  virtual ~Env() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual void seed(std::uint64_t seed) = 0;
  virtual std::vector<double> reset() = 0;
  /// Stepping a finished episode (or before the first reset) is a contract
  /// error; callers reset explicitly or via VecEnv auto-reset.
  virtual StepResult step(const Action& action) = 0;

  virtual std::array<std::uint64_t, 4> rng_state() const = 0;
  virtual void set_rng_state(const std::array<std::uint64_t, 4>& state) = 0;
};

}  // namespace pop3d
