#include "pop3d/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pop3d/errors.hpp"

namespace pop3d {

namespace {
constexpr double kSimplexTolerance = 1e-9;
constexpr double kHalfLn2Pi = 0.9189385332046727;  // 0.5 * ln(2 pi)
}  // namespace

double gaussian_log_norm(std::size_t dims) { return -kHalfLn2Pi * static_cast<double>(dims); }

CategoricalParams CategoricalParams::from_logits(std::span<const double> logits) {
  if (logits.empty()) throw ContractError("from_logits: empty logits");
  double mx = logits[0];
  for (double v : logits) mx = std::max(mx, v);
  double acc = 0.0;
  for (double v : logits) acc += std::exp(v - mx);
  const double lse = mx + std::log(acc);
  CategoricalParams out;
  out.probs.reserve(logits.size());
  for (double v : logits) out.probs.push_back(std::exp(v - lse));
  return out;
}

void CategoricalParams::validate() const {
  if (probs.empty()) throw ContractError("categorical distribution needs K >= 1 entries");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ContractError("categorical probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw ContractError("categorical probabilities must sum to one");
  }
}

void DiagGaussianParams::validate() const {
  if (mean.size() != log_std.size()) {
    throw ContractError("gaussian mean and log_std must have equal length");
  }
  if (mean.empty()) throw ContractError("gaussian distribution needs d >= 1 dimensions");
  for (double v : log_std) {
    if (!std::isfinite(v)) throw ContractError("gaussian log_std must be finite");
  }
}

std::size_t sample(const CategoricalParams& params, Rng& rng) {
  params.validate();
  return rng.categorical(params.probs);
}

std::vector<double> sample(const DiagGaussianParams& params, Rng& rng) {
  params.validate();
  std::vector<double> out(params.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = params.mean[i] + std::exp(params.log_std[i]) * rng.normal();
  }
  return out;
}

double log_prob(const CategoricalParams& params, std::size_t action) {
  if (action >= params.size()) throw ContractError("categorical action outside support");
  const double p = params.probs[action];
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(p);
}

double log_prob(const DiagGaussianParams& params, std::span<const double> action) {
  if (action.size() != params.size()) throw ContractError("gaussian action dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < action.size(); ++i) {
    const double z = (action[i] - params.mean[i]) * std::exp(-params.log_std[i]);
    acc += (z * z) * -0.5 - params.log_std[i];
  }
  return acc + gaussian_log_norm(params.size());
}

double entropy(const CategoricalParams& params) {
  double acc = 0.0;
  for (double p : params.probs) {
    if (p > 0.0) acc -= p * std::log(p);
  }
  return acc;
}

double entropy(const DiagGaussianParams& params) {
  double acc = 0.0;
  for (double ls : params.log_std) acc += ls;
  return acc + (kHalfLn2Pi + 0.5) * static_cast<double>(params.size());
}

double kl_divergence(const CategoricalParams& old_dist, const CategoricalParams& new_dist) {
  if (old_dist.size() != new_dist.size()) {
    throw ContractError("kl_divergence: distributions must share a support size");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < old_dist.size(); ++i) {
    const double po = old_dist.probs[i];
    if (po == 0.0) continue;
    const double pn = new_dist.probs[i];
    if (pn == 0.0) return std::numeric_limits<double>::infinity();
    acc += po * std::log(po / pn);
  }
  return acc;
}

double kl_divergence(const DiagGaussianParams& old_dist, const DiagGaussianParams& new_dist) {
  if (old_dist.size() != new_dist.size()) {
    throw ContractError("kl_divergence: distributions must share a dimension");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < old_dist.size(); ++i) {
    const double dls = old_dist.log_std[i] - new_dist.log_std[i];
    const double dmu = old_dist.mean[i] - new_dist.mean[i];
    acc += new_dist.log_std[i] - old_dist.log_std[i] + 0.5 * std::exp(2.0 * dls) +
           0.5 * dmu * dmu * std::exp(-2.0 * new_dist.log_std[i]) - 0.5;
  }
  return acc;
}

double total_variation(const CategoricalParams& p, const CategoricalParams& q) {
  if (p.size() != q.size()) {
    throw ContractError("total_variation: distributions must share a support size");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p.probs[i] - q.probs[i]);
  return 0.5 * acc;
}

double point_prob_distance(const CategoricalParams& old_dist, const CategoricalParams& new_dist,
                           std::size_t action) {
  if (old_dist.size() != new_dist.size()) {
    throw ContractError("point_prob_distance: distributions must share a support size");
  }
  if (action >= old_dist.size()) throw ContractError("point_prob_distance: action outside support");
  const double diff = old_dist.probs[action] - new_dist.probs[action];
  return diff * diff;
}

double point_prob_distance(const DiagGaussianParams& old_dist, const DiagGaussianParams& new_dist,
                           std::span<const double> action) {
  const double diff = std::exp(log_prob(old_dist, action)) - std::exp(log_prob(new_dist, action));
  return diff * diff;
}

}  // namespace pop3d
