#pragma once

#include <functional>
#include <memory>
#include <span>

#include "pop3d/env.hpp"

namespace pop3d {

/// N independent environments, one RNG stream each, with auto-reset.
/// Actors never share state, so distinct actors may be stepped from distinct
/// threads; a parallel sweep produces results identical to a sequential one.
class VecEnv {
 public:
  using EnvFactory = std::function<std::unique_ptr<Env>()>;

  VecEnv(const EnvFactory& factory, std::size_t n_actors,
         std::span<const std::uint64_t> seeds);

  std::size_t n_actors() const { return envs_.size(); }
  const EnvSpec& spec() const { return envs_.front()->spec(); }

  void reset_all();

  /// Steps one actor and auto-resets its episode when it ends. The returned
  /// StepResult keeps the episode-final observation; current_obs() already
  /// points at the fresh episode.
  StepResult step_one(std::size_t actor, const Action& action);
  std::vector<StepResult> step_all(std::span<const Action> actions);

  std::span<const double> current_obs(std::size_t actor) const;

  Env& env(std::size_t actor) { return *envs_[actor]; }
  std::vector<std::array<std::uint64_t, 4>> rng_states() const;
  void set_rng_states(std::span<const std::array<std::uint64_t, 4>> states);

 private:
  std::vector<std::unique_ptr<Env>> envs_;
  std::vector<std::vector<double>> current_obs_;
};

}  // namespace pop3d
