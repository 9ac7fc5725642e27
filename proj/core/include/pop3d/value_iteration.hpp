#pragma once

#include <vector>

#include "pop3d/chain_mdp.hpp"

namespace pop3d {

struct ValueIterationResult {
  /// Bellman-optimal V*(s) per state; the goal state is fixed at 0.
  std::vector<double> state_values;
  /// Greedy action per state (0 = left, 1 = right); ties prefer right.
  std::vector<std::size_t> greedy_actions;
  /// Return of the greedy policy from state 0 under gamma.
  double discounted_start_return = 0.0;
  /// Undiscounted episode return of the greedy policy, horizon-capped. This
  /// is the quantity training scores are compared against.
  double undiscounted_start_return = 0.0;
};

/// Exact solution of the chain MDP to fixed-point tolerance 1e-10.
ValueIterationResult value_iteration_oracle(const ChainMdpConfig& config, double gamma);

/// Convenience over a live environment; throws ContractError for anything
/// that is not an enumerable chain MDP.
ValueIterationResult value_iteration_oracle(const Env& env, double gamma);

}  // namespace pop3d
