#pragma once

#include <span>
#include <vector>

namespace pop3d {

/// One contiguous rollout segment. `dones` marks genuine terminations; when
/// the final step is not terminal the recursion bootstraps from
/// bootstrap_value (the value of the first observation past the segment).
struct Trajectory {
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<unsigned char> dones;
  double bootstrap_value = 0.0;
  double gamma = 0.99;
  double lambda = 0.95;

  std::size_t length() const { return rewards.size(); }
  void validate() const;
};

struct AdvantageResult {
  std::vector<double> advantages;
  std::vector<double> return_targets;  // advantages + values
};

/// In-episode discounted return R_t = sum_k gamma^k r_{t+k}.
std::vector<double> discounted_return(std::span<const double> rewards, double gamma);

/// delta = r + gamma * V(s') - V(s); V(s') is suppressed on terminal steps.
double one_step_advantage(double reward, double value, double next_value, double gamma,
                          bool terminal);

/// Backward recursion A_t = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}.
AdvantageResult gae(const Trajectory& traj);

}  // namespace pop3d
