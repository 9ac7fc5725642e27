#include "pop3d/objectives.hpp"

#include <cmath>
#include <string>

#include "pop3d/errors.hpp"

namespace pop3d {

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::Pop3d: return "pop3d";
    case Algo::PpoClip: return "ppo";
    case Algo::FixedKl: return "fixed-kl";
    case Algo::VanillaPg: return "pg";
  }
  throw ContractError("unknown objective kind");
}

Algo algo_from_name(const std::string& name) {
  if (name == "pop3d") return Algo::Pop3d;
  if (name == "ppo") return Algo::PpoClip;
  if (name == "fixed-kl") return Algo::FixedKl;
  if (name == "pg") return Algo::VanillaPg;
  throw ContractError("unknown algorithm name: " + name);
}

void ObjectiveKind::validate() const {
  switch (algo) {
    case Algo::Pop3d:
    case Algo::FixedKl:
      if (!(beta > 0.0)) throw ContractError("penalty coefficient beta must be positive");
      break;
    case Algo::PpoClip:
      if (!(clip_eps > 0.0 && clip_eps < 1.0)) {
        throw ContractError("clip ratio must lie in (0, 1)");
      }
      break;
    case Algo::VanillaPg:
      break;
    default:
      throw ContractError("unknown objective kind");
  }
}

void LossWeights::validate() const {
  if (value_coeff < 0.0 || entropy_coeff < 0.0) {
    throw ContractError("loss weights must be non-negative");
  }
}

void ObjectiveBatch::validate() const {
  const std::size_t n = size();
  if (n == 0) throw ContractError("objective batch is empty");
  if (old_log_probs.size() != n || value_targets.size() != n) {
    throw ContractError("objective batch arrays must have equal length");
  }
  if (old_dist.rows() != n) throw ContractError("objective batch old_dist row count mismatch");
  if (head == HeadKind::Categorical) {
    if (discrete_actions.size() != n) throw ContractError("objective batch needs one action per sample");
    if (old_dist.cols() != action_dim) throw ContractError("objective batch old_dist width mismatch");
  } else {
    if (continuous_actions.rows() != n || continuous_actions.cols() != action_dim) {
      throw ContractError("objective batch continuous action shape mismatch");
    }
    if (old_dist.cols() != 2 * action_dim) throw ContractError("objective batch old_dist width mismatch");
  }
}

namespace {

constexpr double kHalfLn2PiE = 1.4189385332046727;  // 0.5 * ln(2 pi e)

Tape::Var gaussian_action_log_probs(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch) {
  const std::size_t d = batch.action_dim;
  Tape::Var mu = tape.slice_cols(dist_raw, 0, d);
  Tape::Var ls = tape.slice_cols(dist_raw, d, 2 * d);
  Tape::Var actions = tape.constant(batch.continuous_actions);
  Tape::Var z = tape.mul(tape.sub(actions, mu), tape.exp(tape.neg(ls)));
  Tape::Var w = tape.sub(tape.scale(tape.square(z), -0.5), ls);
  return tape.add_scalar(tape.row_sum(w), gaussian_log_norm(d));
}

}  // namespace

Tape::Var action_log_probs(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch) {
  batch.validate();
  if (batch.head == HeadKind::Categorical) {
    return tape.gather_rows(dist_raw, batch.discrete_actions);
  }
  return gaussian_action_log_probs(tape, dist_raw, batch);
}

Tape::Var probability_ratio(Tape& tape, Tape::Var log_probs_new, const ObjectiveBatch& batch) {
  Tape::Var old_lp = tape.constant(Tensor::vector(batch.old_log_probs));
  return tape.exp(tape.sub(log_probs_new, old_lp));
}

Tape::Var point_prob_penalty(Tape& tape, Tape::Var log_probs_new, const ObjectiveBatch& batch) {
  std::vector<double> old_point(batch.size());
  for (std::size_t i = 0; i < old_point.size(); ++i) old_point[i] = std::exp(batch.old_log_probs[i]);
  Tape::Var p_new = tape.exp(log_probs_new);
  Tape::Var p_old = tape.constant(Tensor::vector(std::move(old_point)));
  return tape.square(tape.sub(p_new, p_old));
}

Tape::Var kl_penalty(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch) {
  batch.validate();
  const std::size_t n = batch.size();
  if (batch.head == HeadKind::Categorical) {
    const std::size_t k = batch.action_dim;
    Tensor old_probs = Tensor::zeros({n, k});
    for (std::size_t i = 0; i < n * k; ++i) old_probs[i] = std::exp(batch.old_dist[i]);
    Tape::Var diff = tape.sub(tape.constant(batch.old_dist), dist_raw);
    return tape.row_sum(tape.mul(tape.constant(std::move(old_probs)), diff));
  }
  const std::size_t d = batch.action_dim;
  Tensor old_mu = Tensor::zeros({n, d});
  Tensor old_ls = Tensor::zeros({n, d});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      old_mu.at(i, j) = batch.old_dist.at(i, j);
      old_ls.at(i, j) = batch.old_dist.at(i, d + j);
    }
  }
  Tape::Var mu = tape.slice_cols(dist_raw, 0, d);
  Tape::Var ls = tape.slice_cols(dist_raw, d, 2 * d);
  Tape::Var old_mu_c = tape.constant(std::move(old_mu));
  Tape::Var old_ls_c = tape.constant(std::move(old_ls));
  // ls_n - ls_o + 0.5 exp(2(ls_o - ls_n)) + 0.5 (mu_o - mu_n)^2 exp(-2 ls_n) - 0.5
  Tape::Var dls = tape.sub(ls, old_ls_c);
  Tape::Var var_ratio = tape.scale(tape.exp(tape.scale(dls, -2.0)), 0.5);
  Tape::Var dmu2 = tape.square(tape.sub(old_mu_c, mu));
  Tape::Var mean_term = tape.scale(tape.mul(dmu2, tape.exp(tape.scale(ls, -2.0))), 0.5);
  Tape::Var per_dim = tape.add_scalar(tape.add(tape.add(dls, var_ratio), mean_term), -0.5);
  return tape.row_sum(per_dim);
}

Tape::Var entropy_mean(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch) {
  batch.validate();
  if (batch.head == HeadKind::Categorical) {
    Tape::Var plogp = tape.mul(tape.exp(dist_raw), dist_raw);
    return tape.mean(tape.neg(tape.row_sum(plogp)));
  }
  const std::size_t d = batch.action_dim;
  Tape::Var ls = tape.slice_cols(dist_raw, d, 2 * d);
  Tape::Var per_sample =
      tape.add_scalar(tape.row_sum(ls), kHalfLn2PiE * static_cast<double>(d));
  return tape.mean(per_sample);
}

Tape::Var vanilla_pg(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch) {
  Tape::Var lp = action_log_probs(tape, dist_raw, batch);
  Tape::Var adv = tape.constant(Tensor::vector(batch.advantages));
  return tape.mean(tape.mul(lp, adv));
}

Tape::Var ppo_clip(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch, double clip_eps) {
  Tape::Var lp = action_log_probs(tape, dist_raw, batch);
  Tape::Var ratio = probability_ratio(tape, lp, batch);
  Tape::Var adv = tape.constant(Tensor::vector(batch.advantages));
  Tape::Var surrogate = tape.mul(ratio, adv);
  Tape::Var clipped = tape.mul(tape.clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps), adv);
  return tape.mean(tape.minimum(surrogate, clipped));
}

Tape::Var pop3d(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch, double beta) {
  Tape::Var lp = action_log_probs(tape, dist_raw, batch);
  Tape::Var ratio = probability_ratio(tape, lp, batch);
  Tape::Var adv = tape.constant(Tensor::vector(batch.advantages));
  Tape::Var penalty = point_prob_penalty(tape, lp, batch);
  return tape.mean(tape.sub(tape.mul(ratio, adv), tape.scale(penalty, beta)));
}

Tape::Var fixed_kl(Tape& tape, Tape::Var dist_raw, const ObjectiveBatch& batch, double beta) {
  Tape::Var lp = action_log_probs(tape, dist_raw, batch);
  Tape::Var ratio = probability_ratio(tape, lp, batch);
  Tape::Var adv = tape.constant(Tensor::vector(batch.advantages));
  Tape::Var penalty = kl_penalty(tape, dist_raw, batch);
  return tape.mean(tape.sub(tape.mul(ratio, adv), tape.scale(penalty, beta)));
}

Tape::Var value_loss(Tape& tape, Tape::Var values_pred, std::span<const double> targets) {
  if (tape.value(values_pred).size() != targets.size()) {
    throw ContractError("value_loss: prediction/target length mismatch");
  }
  Tape::Var t = tape.constant(Tensor::vector(std::vector<double>(targets.begin(), targets.end())));
  return tape.mean(tape.square(tape.sub(values_pred, t)));
}

TotalLoss total_loss(Tape& tape, Tape::Var dist_raw, Tape::Var values_pred,
                     const ObjectiveBatch& batch, const ObjectiveKind& kind,
                     const LossWeights& weights) {
  kind.validate();
  weights.validate();
  batch.validate();

  Tape::Var lp = action_log_probs(tape, dist_raw, batch);
  Tape::Var ratio = probability_ratio(tape, lp, batch);
  Tape::Var adv = tape.constant(Tensor::vector(batch.advantages));
  Tape::Var surrogate = tape.mul(ratio, adv);

  TotalLoss out;
  Tape::Var objective;
  Tape::Var penalty{};  // per-sample penalty when the objective has one
  switch (kind.algo) {
    case Algo::VanillaPg:
      objective = tape.mean(tape.mul(lp, adv));
      break;
    case Algo::PpoClip: {
      Tape::Var clipped =
          tape.mul(tape.clamp(ratio, 1.0 - kind.clip_eps, 1.0 + kind.clip_eps), adv);
      objective = tape.mean(tape.minimum(surrogate, clipped));
      break;
    }
    case Algo::Pop3d:
      penalty = point_prob_penalty(tape, lp, batch);
      objective = tape.mean(tape.sub(surrogate, tape.scale(penalty, kind.beta)));
      break;
    case Algo::FixedKl:
      penalty = kl_penalty(tape, dist_raw, batch);
      objective = tape.mean(tape.sub(surrogate, tape.scale(penalty, kind.beta)));
      break;
    default:
      throw ContractError("unknown objective kind");
  }

  Tape::Var vloss = value_loss(tape, values_pred, batch.value_targets);
  Tape::Var ent = entropy_mean(tape, dist_raw, batch);
  out.loss = tape.add(tape.add(tape.neg(objective), tape.scale(vloss, weights.value_coeff)),
                      tape.scale(ent, -weights.entropy_coeff));

  out.policy_objective = tape.value(objective)[0];
  out.value_loss = tape.value(vloss)[0];
  out.entropy = tape.value(ent)[0];
  out.total = tape.value(out.loss)[0];

  const Tensor& r = tape.value(ratio);
  double racc = 0.0;
  std::size_t clipped_count = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    racc += r[i];
    if (std::abs(r[i] - 1.0) > kind.clip_eps) ++clipped_count;
  }
  out.ratio_mean = racc / static_cast<double>(r.size());
  if (kind.algo == Algo::PpoClip) {
    out.clip_fraction = static_cast<double>(clipped_count) / static_cast<double>(r.size());
  }
  if (penalty.valid()) {
    const Tensor& p = tape.value(penalty);
    double pacc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) pacc += p[i];
    out.penalty_mean = pacc / static_cast<double>(p.size());
  }
  return out;
}

}  // namespace pop3d
