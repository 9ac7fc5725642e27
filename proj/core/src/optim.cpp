#include "pop3d/optim.hpp"

#include <algorithm>
#include <cmath>

#include "pop3d/errors.hpp"

namespace pop3d {

AdamState::AdamState(std::span<const Tensor* const> params, AdamConfig config) : config_(config) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const Tensor* p : params) {
    m_.push_back(Tensor::zeros(p->shape()));
    v_.push_back(Tensor::zeros(p->shape()));
  }
}

void AdamState::restore(std::vector<Tensor> m, std::vector<Tensor> v, std::int64_t step_count) {
  m_ = std::move(m);
  v_ = std::move(v);
  step_count_ = step_count;
}

void AdamState::step(std::span<Tensor* const> params, std::span<const Tensor> grads,
                     double lr_scale) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw DimensionError("adam_step: parameter/gradient count mismatch");
  }
  if (!(lr_scale >= 0.0 && lr_scale <= 1.0)) {
    throw ContractError("adam_step: lr_scale must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(m_[i]) || !grads[i].same_shape(m_[i])) {
      throw DimensionError("adam_step: shape mismatch");
    }
    if (!grads[i].all_finite()) {
      throw NumericError("adam_step: non-finite gradient, update rejected");
    }
  }
  step_count_ += 1;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(step_count_));
  const double lr = config_.step_size * lr_scale;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = grads[i];
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    bool all_zero = true;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j] != 0.0) {
        all_zero = false;
        break;
      }
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
      m[j] = b1 * m[j] + (1.0 - b1) * g[j];
      v[j] = b2 * v[j] + (1.0 - b2) * g[j] * g[j];
    }
    if (all_zero) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double m_hat = m[j] / bc1;
      const double v_hat = v[j] / bc2;
      p[j] -= lr * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
}

double linear_decay(std::size_t iteration, std::size_t total) {
  if (total == 0) throw ContractError("linear_decay: total must be positive");
  if (iteration >= total) throw ContractError("linear_decay: iteration must be < total");
  return 1.0 - static_cast<double>(iteration) / static_cast<double>(total);
}

double global_grad_norm(std::span<const Tensor> grads) {
  double acc = 0.0;
  for (const Tensor& g : grads) {
    for (double x : g.values()) acc += x * x;
  }
  return std::sqrt(acc);
}

void clip_grads_by_global_norm(std::span<Tensor> grads, double max_norm) {
  if (max_norm <= 0.0) throw ContractError("clip_grads_by_global_norm: max_norm must be positive");
  const double norm = global_grad_norm(grads);
  if (norm <= max_norm) return;
  const double scale = max_norm / norm;
  for (Tensor& g : grads) {
    for (double& x : g.values()) x *= scale;
  }
}

double max_relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("max_relative_error: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

}  // namespace pop3d
