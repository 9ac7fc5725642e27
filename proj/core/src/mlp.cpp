#include "pop3d/mlp.hpp"

#include <cmath>

#include "pop3d/errors.hpp"

namespace pop3d {

std::size_t MlpConfig::policy_out_dim() const {
  return head == HeadKind::Categorical ? action_dim : 2 * action_dim;
}

void MlpConfig::validate() const {
  if (obs_dim == 0) throw ContractError("MlpConfig: obs_dim must be positive");
  if (head == HeadKind::Categorical && action_dim < 2) {
    throw ContractError("MlpConfig: categorical head needs K >= 2 actions");
  }
  if (head == HeadKind::Gaussian && action_dim < 1) {
    throw ContractError("MlpConfig: gaussian head needs d >= 1 dimensions");
  }
  for (std::size_t width : hidden) {
    if (width == 0) throw ContractError("MlpConfig: hidden widths must be positive");
  }
}

Action BatchDist::sample_row(std::size_t i, Rng& rng) const {
  if (kind == HeadKind::Categorical) return sample(categorical_row(i), rng);
  return sample(gaussian_row(i), rng);
}

double BatchDist::log_prob_row(std::size_t i, const Action& action) const {
  if (kind == HeadKind::Categorical) {
    const auto a = std::get<std::size_t>(action);
    if (a >= action_dim) throw ContractError("categorical action outside support");
    return raw.at(i, a);  // rows already hold normalized log-probabilities
  }
  return log_prob(gaussian_row(i), std::get<std::vector<double>>(action));
}

double BatchDist::entropy_row(std::size_t i) const {
  if (kind == HeadKind::Categorical) return entropy(categorical_row(i));
  return entropy(gaussian_row(i));
}

CategoricalParams BatchDist::categorical_row(std::size_t i) const {
  if (kind != HeadKind::Categorical) throw ContractError("not a categorical distribution");
  CategoricalParams out;
  out.probs.resize(action_dim);
  auto r = raw.row(i);
  for (std::size_t k = 0; k < action_dim; ++k) out.probs[k] = std::exp(r[k]);
  return out;
}

DiagGaussianParams BatchDist::gaussian_row(std::size_t i) const {
  if (kind != HeadKind::Gaussian) throw ContractError("not a gaussian distribution");
  DiagGaussianParams out;
  out.mean.resize(action_dim);
  out.log_std.resize(action_dim);
  auto r = raw.row(i);
  for (std::size_t k = 0; k < action_dim; ++k) {
    out.mean[k] = r[k];
    out.log_std[k] = r[action_dim + k];
  }
  return out;
}

Tensor orthogonal_matrix(std::size_t rows, std::size_t cols, double gain, Rng& rng) {
  // Orthonormalize the smaller side; rows when rows <= cols, else columns.
  const bool by_rows = rows <= cols;
  const std::size_t vectors = by_rows ? rows : cols;
  const std::size_t length = by_rows ? cols : rows;
  std::vector<std::vector<double>> basis(vectors, std::vector<double>(length));
  for (std::size_t v = 0; v < vectors; ++v) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      for (double& x : basis[v]) x = rng.normal();
      for (std::size_t u = 0; u < v; ++u) {
        double dot = 0.0;
        for (std::size_t i = 0; i < length; ++i) dot += basis[v][i] * basis[u][i];
        for (std::size_t i = 0; i < length; ++i) basis[v][i] -= dot * basis[u][i];
      }
      double norm = 0.0;
      for (double x : basis[v]) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (double& x : basis[v]) x /= norm;
        break;
      }
    }
  }
  Tensor out = Tensor::zeros({rows, cols});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.at(r, c) = gain * (by_rows ? basis[r][c] : basis[c][r]);
    }
  }
  return out;
}

MlpParams MlpParams::init(const MlpConfig& config, Rng& rng) {
  config.validate();
  MlpParams p;
  p.config = config;
  std::size_t in_dim = config.obs_dim;
  for (std::size_t width : config.hidden) {
    p.trunk_weights.push_back(orthogonal_matrix(in_dim, width, config.hidden_gain, rng));
    p.trunk_biases.push_back(Tensor::zeros({width}));
    in_dim = width;
  }
  p.policy_weight = orthogonal_matrix(in_dim, config.policy_out_dim(), config.policy_gain, rng);
  p.policy_bias = Tensor::zeros({config.policy_out_dim()});
  p.value_weight = orthogonal_matrix(in_dim, 1, config.value_gain, rng);
  p.value_bias = Tensor::zeros({1});
  return p;
}

MlpParams MlpParams::zeros(const MlpConfig& config) {
  config.validate();
  MlpParams p;
  p.config = config;
  std::size_t in_dim = config.obs_dim;
  for (std::size_t width : config.hidden) {
    p.trunk_weights.push_back(Tensor::zeros({in_dim, width}));
    p.trunk_biases.push_back(Tensor::zeros({width}));
    in_dim = width;
  }
  p.policy_weight = Tensor::zeros({in_dim, config.policy_out_dim()});
  p.policy_bias = Tensor::zeros({config.policy_out_dim()});
  p.value_weight = Tensor::zeros({in_dim, 1});
  p.value_bias = Tensor::zeros({1});
  return p;
}

std::vector<Tensor*> MlpParams::tensors() {
  std::vector<Tensor*> out;
  for (std::size_t i = 0; i < trunk_weights.size(); ++i) {
    out.push_back(&trunk_weights[i]);
    out.push_back(&trunk_biases[i]);
  }
  out.push_back(&policy_weight);
  out.push_back(&policy_bias);
  out.push_back(&value_weight);
  out.push_back(&value_bias);
  return out;
}

std::vector<const Tensor*> MlpParams::tensors() const {
  std::vector<const Tensor*> out;
  for (std::size_t i = 0; i < trunk_weights.size(); ++i) {
    out.push_back(&trunk_weights[i]);
    out.push_back(&trunk_biases[i]);
  }
  out.push_back(&policy_weight);
  out.push_back(&policy_bias);
  out.push_back(&value_weight);
  out.push_back(&value_bias);
  return out;
}

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (const Tensor* t : tensors()) n += t->size();
  return n;
}

std::vector<double> MlpParams::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const Tensor* t : tensors()) out.insert(out.end(), t->values().begin(), t->values().end());
  return out;
}

void MlpParams::set_flat(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw DimensionError("set_flat: size mismatch");
  std::size_t pos = 0;
  for (Tensor* t : tensors()) {
    for (std::size_t i = 0; i < t->size(); ++i) (*t)[i] = flat[pos++];
  }
}

TapedForward forward_on_tape(Tape& tape, const MlpParams& params, const Tensor& obs,
                             bool track_gradients) {
  if (obs.rank() != 2 || obs.cols() != params.config.obs_dim) {
    throw DimensionError("forward: observation width does not match the first layer");
  }
  TapedForward out;
  auto ts = params.tensors();
  out.params.reserve(ts.size());
  for (const Tensor* t : ts) {
    out.params.push_back(track_gradients ? tape.input(*t) : tape.constant(*t));
  }
  const std::size_t n_trunk = params.trunk_weights.size();
  Tape::Var h = tape.constant(obs);
  for (std::size_t i = 0; i < n_trunk; ++i) {
    h = tape.tanh(tape.add_row(tape.matmul(h, out.params[2 * i]), out.params[2 * i + 1]));
  }
  Tape::Var logits = tape.add_row(tape.matmul(h, out.params[2 * n_trunk]), out.params[2 * n_trunk + 1]);
  out.dist_raw = params.config.head == HeadKind::Categorical ? tape.log_softmax_rows(logits) : logits;
  Tape::Var v =
      tape.add_row(tape.matmul(h, out.params[2 * n_trunk + 2]), out.params[2 * n_trunk + 3]);
  out.value = tape.reshape(v, {obs.rows()});
  return out;
}

ForwardResult forward(const MlpParams& params, const Tensor& obs) {
  Tape tape;
  TapedForward f = forward_on_tape(tape, params, obs, /*track_gradients=*/false);
  ForwardResult out;
  out.dist.kind = params.config.head;
  out.dist.action_dim = params.config.action_dim;
  out.dist.raw = tape.value(f.dist_raw);
  out.value = tape.value(f.value);
  return out;
}

ForwardResult forward(const MlpParams& params, std::span<const double> single_obs) {
  Tensor obs = Tensor::from_values({1, single_obs.size()},
                                   std::vector<double>(single_obs.begin(), single_obs.end()));
  return forward(params, obs);
}

}  // namespace pop3d
