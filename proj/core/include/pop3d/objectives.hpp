#pragma once

#include <vector>

#include "pop3d/mlp.hpp"
#include "pop3d/tape.hpp"
#include "pop3d/tensor.hpp"

namespace pop3d {

enum class Algo { Pop3d, PpoClip, FixedKl, VanillaPg };

const char* algo_name(Algo algo);
Algo algo_from_name(const std::string& name);  // pop3d | ppo | fixed-kl | pg

struct ObjectiveKind {
  Algo algo = Algo::Pop3d;
  /// Penalty coefficient for Pop3d and FixedKl.
  double beta = 5.0;
  /// Clip ratio for PpoClip.
  double clip_eps = 0.2;

  void validate() const;
};

struct LossWeights {
  double value_coeff = 1.0;
  double entropy_coeff = 0.01;
  void validate() const;
};

/// Per-sample data every objective treats as constants: nothing here is a
/// graph node, so perturbing whatever parameters produced it cannot change
/// losses or gradients.
struct ObjectiveBatch {
  HeadKind head = HeadKind::Categorical;
  std::size_t action_dim = 0;
  /// Old policy output per sample: [B,K] log-probs or [B,2d] mean|log_std.
  Tensor old_dist;
  std::vector<double> old_log_probs;
  std::vector<std::size_t> discrete_actions;  // categorical
  Tensor continuous_actions;                  // [B,d] gaussian
  std::vector<double> advantages;
  std::vector<double> value_targets;

  std::size_t size() const { return advantages.size(); }
  void validate() const;
};

/// New-policy log-probability of each taken action, built from the policy
/// head output on the tape.
Tape::Var action_log_probs(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch);

/// Probability ratio r = exp(logp_new - logp_old) per sample.
Tape::Var probability_ratio(Tape& tape, Tape::Var log_probs_new, const ObjectiveBatch& batch);

/// Point probability distance per sample: squared difference between the old
/// and new probability (or joint density) of the taken action.
Tape::Var point_prob_penalty(Tape& tape, Tape::Var log_probs_new, const ObjectiveBatch& batch);

/// KL(old || new) per sample.
Tape::Var kl_penalty(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch);

/// Mean entropy of the new policy over the batch.
Tape::Var entropy_mean(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch);

// The four policy surrogates. Each returns the scalar to MAXIMIZE; the
// trainer negates inside total_loss.
Tape::Var vanilla_pg(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch);
Tape::Var ppo_clip(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch, double clip_eps);
Tape::Var pop3d(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch, double beta);
Tape::Var fixed_kl(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch, double beta);

/// Mean squared error between predicted values and return targets.
Tape::Var value_loss(Tape& tape, Tape::Var values_pred, std::span<const double> targets);

struct TotalLoss {
  Tape::Var loss;  // scalar to minimize
  // Values read back from the tape for diagnostics.
  double policy_objective = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double total = 0.0;
  double ratio_mean = 1.0;
  double penalty_mean = 0.0;  // mean D_pp (Pop3d) or KL (FixedKl), else 0
  double clip_fraction = 0.0;  // fraction with |r-1| > eps (PpoClip), else 0
};

/// -(policy objective) + value_coeff * value_loss - entropy_coeff * entropy.
TotalLoss total_loss(Tape& tape, Tape::Var dist_raw, Tape::Var values_pred,
                     const ObjectiveBatch& batch, const ObjectiveKind& kind,
                     const LossWeights& weights);

}  // namespace pop3d
