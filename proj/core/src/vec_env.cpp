#include "pop3d/vec_env.hpp"

#include "pop3d/errors.hpp"

namespace pop3d {

VecEnv::VecEnv(const EnvFactory& factory, std::size_t n_actors,
               std::span<const std::uint64_t> seeds) {
  if (n_actors == 0) throw ContractError("vec_env: need at least one actor");
  if (seeds.size() != n_actors) throw ContractError("vec_env: one seed per actor required");
  envs_.reserve(n_actors);
  current_obs_.resize(n_actors);
  for (std::size_t i = 0; i < n_actors; ++i) {
    envs_.push_back(factory());
    envs_.back()->seed(seeds[i]);
  }
}

void VecEnv::reset_all() {
  for (std::size_t i = 0; i < envs_.size(); ++i) current_obs_[i] = envs_[i]->reset();
}

StepResult VecEnv::step_one(std::size_t actor, const Action& action) {
  if (actor >= envs_.size()) throw ContractError("vec_env: actor index out of range");
  StepResult result = envs_[actor]->step(action);
  current_obs_[actor] = result.done() ? envs_[actor]->reset() : result.observation;
  return result;
}

std::vector<StepResult> VecEnv::step_all(std::span<const Action> actions) {
  if (actions.size() != envs_.size()) throw ContractError("vec_env: one action per actor required");
  std::vector<StepResult> out;
  out.reserve(envs_.size());
  for (std::size_t i = 0; i < envs_.size(); ++i) out.push_back(step_one(i, actions[i]));
  return out;
}

std::span<const double> VecEnv::current_obs(std::size_t actor) const {
  if (actor >= envs_.size()) throw ContractError("vec_env: actor index out of range");
  return current_obs_[actor];
}

std::vector<std::array<std::uint64_t, 4>> VecEnv::rng_states() const {
  std::vector<std::array<std::uint64_t, 4>> out;
  out.reserve(envs_.size());
  for (const auto& env : envs_) out.push_back(env->rng_state());
  return out;
}

void VecEnv::set_rng_states(std::span<const std::array<std::uint64_t, 4>> states) {
  if (states.size() != envs_.size()) throw ContractError("vec_env: one RNG state per actor required");
  for (std::size_t i = 0; i < envs_.size(); ++i) envs_[i]->set_rng_state(states[i]);
}

}  // namespace pop3d
