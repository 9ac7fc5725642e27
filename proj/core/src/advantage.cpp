#include "pop3d/advantage.hpp"

#include <cmath>

#include "pop3d/errors.hpp"

namespace pop3d {

void Trajectory::validate() const {
  if (rewards.empty()) throw ContractError("trajectory must contain at least one step");
  if (values.size() != rewards.size() || dones.size() != rewards.size()) {
    throw ContractError("trajectory arrays must have equal length");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ContractError("gamma must lie in (0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ContractError("lambda must lie in [0, 1]");
  for (double r : rewards) {
    if (!std::isfinite(r)) throw ContractError("rewards must be finite");
  }
}

std::vector<double> discounted_return(std::span<const double> rewards, double gamma) {
  std::vector<double> out(rewards.size());
  double acc = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    acc = rewards[i] + gamma * acc;
    out[i] = acc;
  }
  return out;
}

double one_step_advantage(double reward, double value, double next_value, double gamma,
                          bool terminal) {
  return reward + (terminal ? 0.0 : gamma * next_value) - value;
}

AdvantageResult gae(const Trajectory& traj) {
  traj.validate();
  const std::size_t n = traj.length();
  AdvantageResult out;
  out.advantages.resize(n);
  out.return_targets.resize(n);
  double carry = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const bool terminal = traj.dones[i] != 0;
    const double next_value = (i + 1 < n) ? traj.values[i + 1] : traj.bootstrap_value;
    const double delta =
        one_step_advantage(traj.rewards[i], traj.values[i], next_value, traj.gamma, terminal);
    carry = delta + traj.gamma * traj.lambda * (terminal ? 0.0 : carry);
    out.advantages[i] = carry;
    out.return_targets[i] = carry + traj.values[i];
  }
  return out;
}

}  // namespace pop3d
