#pragma once

#include <cstdint>
#include <vector>

#include "pop3d/distributions.hpp"
#include "pop3d/tape.hpp"
#include "pop3d/tensor.hpp"

namespace pop3d {

enum class HeadKind { Categorical, Gaussian };

struct MlpConfig {
  std::size_t obs_dim = 0;
  std::vector<std::size_t> hidden = {64, 64};
  HeadKind head = HeadKind::Categorical;
  /// K actions (categorical) or d action dimensions (Gaussian).
  std::size_t action_dim = 0;
  double hidden_gain = 1.4142135623730951;
  double policy_gain = 0.01;
  double value_gain = 1.0;

  /// Width of the policy head output: K, or 2d for (mean | log_std).
  std::size_t policy_out_dim() const;
  void validate() const;
};

/// Policy-head output for a batch of observations. Categorical rows hold
/// normalized log-probabilities; Gaussian rows hold mean followed by log_std.
struct BatchDist {
  HeadKind kind = HeadKind::Categorical;
  std::size_t action_dim = 0;
  Tensor raw;

  std::size_t batch_size() const { return raw.rows(); }
  std::span<const double> raw_row(std::size_t i) const { return raw.row(i); }

  Action sample_row(std::size_t i, Rng& rng) const;
  double log_prob_row(std::size_t i, const Action& action) const;
  double entropy_row(std::size_t i) const;

  CategoricalParams categorical_row(std::size_t i) const;
  DiagGaussianParams gaussian_row(std::size_t i) const;
};

/// Shared tanh trunk with a policy head and a scalar value head.
struct MlpParams {
  MlpConfig config;
  std::vector<Tensor> trunk_weights;
  std::vector<Tensor> trunk_biases;
  Tensor policy_weight, policy_bias;
  Tensor value_weight, value_bias;

  /// Orthogonal weights scaled per layer, zero biases.
  static MlpParams init(const MlpConfig& config, Rng& rng);
  /// All-zero parameters (useful as a fixture).
  static MlpParams zeros(const MlpConfig& config);

  /// Stable flat ordering: trunk (w, b) pairs, then policy head, then value head.
  std::vector<Tensor*> tensors();
  std::vector<const Tensor*> tensors() const;
  std::size_t parameter_count() const;
  std::vector<double> flatten() const;
  void set_flat(std::span<const double> flat);
};

struct ForwardResult {
  BatchDist dist;
  Tensor value;  // [batch]
};

/// Deterministic forward pass; throws DimensionError when the observation
/// width does not match the first layer.
ForwardResult forward(const MlpParams& params, const Tensor& obs);
ForwardResult forward(const MlpParams& params, std::span<const double> single_obs);

struct TapedForward {
  std::vector<Tape::Var> params;  // same order as MlpParams::tensors()
  Tape::Var dist_raw;             // [B,K] log-probs or [B,2d] mean|log_std
  Tape::Var value;                // [B]
};

/// Records the forward pass on a tape. With track_gradients=false the pass
/// computes identical values without any backward bookkeeping, which is what
/// the plain forward() uses so both paths share one arithmetic path.
TapedForward forward_on_tape(Tape& tape, const MlpParams& params, const Tensor& obs,
                             bool track_gradients = true);

/// Orthogonal [rows, cols] matrix scaled by gain (modified Gram-Schmidt on
/// the smaller side).
Tensor orthogonal_matrix(std::size_t rows, std::size_t cols, double gain, Rng& rng);

}  // namespace pop3d
