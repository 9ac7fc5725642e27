#include "pop3d/point_mass.hpp"

#include <algorithm>

#include "pop3d/errors.hpp"

namespace pop3d {

PointMass::PointMass(std::size_t horizon) : horizon_(horizon) {
  if (horizon < 1) throw ContractError("point_mass: horizon must be >= 1");
  spec_.obs_dim = 2;
  spec_.action_space = {ActionKind::Continuous, 1};
  spec_.max_episode_steps = horizon;
}

std::vector<double> PointMass::reset() {
  x_ = rng_.uniform(-1.0, 1.0);
  v_ = 0.0;
  steps_ = 0;
  episode_return_ = 0.0;
  active_ = true;
  return {x_, v_};
}

void PointMass::set_state(double x, double v) {
  x_ = x;
  v_ = v;
}

StepResult PointMass::step(const Action& action) {
  if (!active_) throw ContractError("point_mass: step on a finished or unreset episode");
  const auto* a = std::get_if<std::vector<double>>(&action);
  if (a == nullptr || a->size() != 1) throw ContractError("point_mass: action must be a 1-vector");
  const double clipped = std::clamp((*a)[0], -1.0, 1.0);

  StepResult out;
  out.reward = -(x_ * x_ + 0.1 * clipped * clipped);
  v_ += 0.1 * clipped;
  x_ += 0.1 * v_;
  steps_ += 1;
  out.truncated = steps_ >= horizon_;
  episode_return_ += out.reward;
  out.episode_return_so_far = episode_return_;
  out.observation = {x_, v_};
  if (out.done()) active_ = false;
  return out;
}

std::unique_ptr<Env> point_mass(std::size_t horizon) { return std::make_unique<PointMass>(horizon); }

}  // namespace pop3d
