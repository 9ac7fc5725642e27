#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pop3d/tensor.hpp"

namespace pop3d {

struct AdamConfig {
  double step_size = 2.5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-5;
};

/// Adam with bias correction. One quirk by contract: a parameter tensor whose
/// gradient is identically zero is left in place for that step (moments still
/// decay, the counter still advances), so a zero gradient never moves
/// parameters on stale momentum.
class AdamState {
 public:
  AdamState() = default;
  AdamState(std::span<const Tensor* const> params, AdamConfig config);

  /// One update with effective step size = step_size * lr_scale.
  /// lr_scale must lie in [0, 1]; non-finite gradients are rejected before
  /// any state mutation.
  void step(std::span<Tensor* const> params, std::span<const Tensor> grads, double lr_scale);

  std::int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return config_; }

  std::span<const Tensor> first_moments() const { return m_; }
  std::span<const Tensor> second_moments() const { return v_; }
  /// Direct state access for checkpoint restore.
  void restore(std::vector<Tensor> m, std::vector<Tensor> v, std::int64_t step_count);

 private:
  AdamConfig config_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  std::int64_t step_count_ = 0;
};

/// Decay factor alpha = 1 - iteration / total; requires iteration < total.
double linear_decay(std::size_t iteration, std::size_t total);

double global_grad_norm(std::span<const Tensor> grads);

/// Scales all gradients so the global norm does not exceed max_norm.
void clip_grads_by_global_norm(std::span<Tensor> grads, double max_norm);

/// Max over coordinates of |a-b| / max(1, |a|, |b|); the gradient-check
/// distance used across this project.
double max_relative_error(std::span<const double> a, std::span<const double> b);

}  // namespace pop3d
