#include "pop3d/chain_mdp.hpp"

#include "pop3d/errors.hpp"

namespace pop3d {

ChainMdp::ChainMdp(const ChainMdpConfig& config) : config_(config) {
  if (config.n_states < 2) throw ContractError("chain_mdp: n_states must be >= 2");
  if (config.horizon < 1) throw ContractError("chain_mdp: horizon must be >= 1");
  spec_.obs_dim = config.n_states;
  spec_.action_space = {ActionKind::Discrete, 2};
  spec_.max_episode_steps = config.horizon;
}

std::vector<double> ChainMdp::one_hot(std::size_t state) const {
  std::vector<double> obs(config_.n_states, 0.0);
  obs[state] = 1.0;
  return obs;
}

std::vector<double> ChainMdp::reset() {
  state_ = 0;
  steps_ = 0;
  episode_return_ = 0.0;
  active_ = true;
  return one_hot(state_);
}

StepResult ChainMdp::step(const Action& action) {
  if (!active_) throw ContractError("chain_mdp: step on a finished or unreset episode");
  const auto* a = std::get_if<std::size_t>(&action);
  if (a == nullptr || *a > 1) throw ContractError("chain_mdp: action must be 0 or 1");

  StepResult out;
  out.reward = config_.step_penalty;
  if (*a == 1) {
    state_ += 1;
    if (state_ == config_.n_states - 1) {
      out.reward += config_.goal_reward;
      out.terminal = true;
    }
  } else if (state_ > 0) {
    state_ -= 1;
  }
  steps_ += 1;
  if (!out.terminal && steps_ >= config_.horizon) out.truncated = true;
  episode_return_ += out.reward;
  out.episode_return_so_far = episode_return_;
  out.observation = one_hot(state_);
  if (out.done()) active_ = false;
  return out;
}

std::unique_ptr<Env> chain_mdp(std::size_t n_states, double step_penalty, double goal_reward,
                               std::size_t horizon) {
  return std::make_unique<ChainMdp>(ChainMdpConfig{n_states, step_penalty, goal_reward, horizon});
}

}  // namespace pop3d
