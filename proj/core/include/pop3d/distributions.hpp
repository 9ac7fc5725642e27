#pragma once

#include <span>
#include <variant>
#include <vector>

#include "pop3d/rng.hpp"

namespace pop3d {

/// An action is either a discrete index or a real vector.
using Action = std::variant<std::size_t, std::vector<double>>;

/// Discrete distribution over K actions.
struct CategoricalParams {
  std::vector<double> probs;

  static CategoricalParams from_logits(std::span<const double> logits);
  std::size_t size() const { return probs.size(); }
  /// Enforces probs >= 0 and sum within 1e-9 of one.
  void validate() const;
};

/// Diagonal Gaussian with unconstrained mean and log standard deviation.
struct DiagGaussianParams {
  std::vector<double> mean;
  std::vector<double> log_std;

  std::size_t size() const { return mean.size(); }
  void validate() const;
};

using DistributionParams = std::variant<CategoricalParams, DiagGaussianParams>;

std::size_t sample(const CategoricalParams& params, Rng& rng);
std::vector<double> sample(const DiagGaussianParams& params, Rng& rng);

/// ln p(a). Returns -infinity when probs[a] == 0 (not an error).
double log_prob(const CategoricalParams& params, std::size_t action);
/// Sum over dimensions of the per-dimension normal log density.
double log_prob(const DiagGaussianParams& params, std::span<const double> action);

double entropy(const CategoricalParams& params);
double entropy(const DiagGaussianParams& params);

/// KL(old || new). Returns +infinity when new assigns zero probability where
/// old does not (support mismatch, documented).
double kl_divergence(const CategoricalParams& old_dist, const CategoricalParams& new_dist);
/// Closed form, summed over dimensions.
double kl_divergence(const DiagGaussianParams& old_dist, const DiagGaussianParams& new_dist);

/// 0.5 * sum_i |p_i - q_i|. Discrete only; the multivariate Gaussian case has
/// no closed form and no objective here needs it.
double total_variation(const CategoricalParams& p, const CategoricalParams& q);

/// Squared difference of the probability the two distributions assign to the
/// one sampled action. Symmetric; in [0, 1] for the discrete case.
double point_prob_distance(const CategoricalParams& old_dist, const CategoricalParams& new_dist,
                           std::size_t action);
/// Continuous case: squared difference of the joint densities at the action.
/// Unbounded above since densities may exceed one.
double point_prob_distance(const DiagGaussianParams& old_dist, const DiagGaussianParams& new_dist,
                           std::span<const double> action);

/// -(d/2) ln(2 pi): the log-normalizer shared by the Gaussian log-density
/// paths so that taped and plain evaluations agree bitwise.
double gaussian_log_norm(std::size_t dims);

}  // namespace pop3d
