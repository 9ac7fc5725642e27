#include "pop3d/value_iteration.hpp"

#include <cmath>
#include <limits>

#include "pop3d/errors.hpp"

namespace pop3d {

namespace {

constexpr double kTolerance = 1e-10;
constexpr std::size_t kMaxSweeps = 1000000;

struct Transition {
  std::size_t next;
  double reward;
  bool terminal;
};

Transition transition(const ChainMdpConfig& c, std::size_t state, std::size_t action) {
  Transition t;
  t.reward = c.step_penalty;
  if (action == 1) {
    t.next = state + 1;
    t.terminal = t.next == c.n_states - 1;
    if (t.terminal) t.reward += c.goal_reward;
  } else {
    t.next = state > 0 ? state - 1 : 0;
    t.terminal = false;
  }
  return t;
}

}  // namespace

ValueIterationResult value_iteration_oracle(const ChainMdpConfig& config, double gamma) {
  if (config.n_states < 2) throw ContractError("value_iteration: n_states must be >= 2");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ContractError("value_iteration: gamma must lie in [0, 1]");

  const std::size_t n = config.n_states;
  std::vector<double> values(n, 0.0);  // values[n-1] stays 0 (terminal)
  bool converged = false;
  for (std::size_t sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double max_delta = 0.0;
    for (std::size_t s = 0; s + 1 < n; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < 2; ++a) {
        const Transition t = transition(config, s, a);
        const double q = t.reward + (t.terminal ? 0.0 : gamma * values[t.next]);
        best = std::max(best, q);
      }
      max_delta = std::max(max_delta, std::abs(best - values[s]));
      values[s] = best;
    }
    converged = max_delta < kTolerance;
  }
  if (!converged) throw NumericError("value_iteration: no fixed point within the sweep budget");

  ValueIterationResult out;
  out.state_values = values;
  out.greedy_actions.resize(n - 1);
  for (std::size_t s = 0; s + 1 < n; ++s) {
    double best_q = -std::numeric_limits<double>::infinity();
    std::size_t best_a = 0;
    for (std::size_t a = 0; a < 2; ++a) {
      const Transition t = transition(config, s, a);
      const double q = t.reward + (t.terminal ? 0.0 : gamma * values[t.next]);
      if (q > best_q || (q == best_q && a == 1)) {
        best_q = q;
        best_a = a;
      }
    }
    out.greedy_actions[s] = best_a;
  }

  std::size_t state = 0;
  double discount = 1.0;
  for (std::size_t step = 0; step < config.horizon; ++step) {
    const Transition t = transition(config, state, out.greedy_actions[state]);
    out.discounted_start_return += discount * t.reward;
    out.undiscounted_start_return += t.reward;
    discount *= gamma;
    if (t.terminal) break;
    state = t.next;
  }
  return out;
}

ValueIterationResult value_iteration_oracle(const Env& env, double gamma) {
  const auto* chain = dynamic_cast<const ChainMdp*>(&env);
  if (chain == nullptr) {
    throw ContractError("value_iteration: environment is not an enumerable chain MDP");
  }
  return value_iteration_oracle(chain->config(), gamma);
}

}  // namespace pop3d
