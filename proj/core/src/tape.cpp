#include "pop3d/tape.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pop3d/errors.hpp"

namespace pop3d {

Tape::Var Tape::push(Tensor value, bool requires_grad, std::function<void(Tape&)> pull) {
  Var v{static_cast<std::uint32_t>(nodes_.size())};
  Node n;
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  n.pull = requires_grad ? std::move(pull) : nullptr;
  nodes_.push_back(std::move(n));
  return v;
}

Tape::Node& Tape::node(Var v) {
  if (!v.valid() || v.index >= nodes_.size()) throw ContractError("invalid tape variable");
  return nodes_[v.index];
}

const Tape::Node& Tape::node(Var v) const {
  if (!v.valid() || v.index >= nodes_.size()) throw ContractError("invalid tape variable");
  return nodes_[v.index];
}

Tensor& Tape::grad_buffer(Var v) {
  Node& n = node(v);
  if (!n.grad_live) {
    n.grad = Tensor::zeros(n.value.shape());
    n.grad_live = true;
  }
  return n.grad;
}

Tape::Var Tape::input(Tensor value) { return push(std::move(value), true, nullptr); }

Tape::Var Tape::constant(Tensor value) { return push(std::move(value), false, nullptr); }

const Tensor& Tape::value(Var v) const { return node(v).value; }

Tensor Tape::grad(Var v) const {
  const Node& n = node(v);
  if (n.grad_live) return n.grad;
  return Tensor::zeros(n.value.shape());
}

bool Tape::requires_grad(Var v) const { return node(v).requires_grad; }

void Tape::reset() {
  nodes_.clear();
  consumed_ = false;
}

void Tape::backward(Var loss) {
  const Node& ln = node(loss);
  if (ln.value.size() != 1) throw ContractError("backward requires a scalar loss");
  if (consumed_) throw ContractError("tape already consumed; reset() before reuse");
  consumed_ = true;
  if (!ln.requires_grad) return;
  grad_buffer(loss)[0] = 1.0;
  for (std::uint32_t i = loss.index + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.requires_grad && n.grad_live && n.pull) n.pull(*this);
  }
}

namespace {

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b)) throw DimensionError(std::string(op) + ": shape mismatch");
}

}  // namespace

Tape::Var Tape::add(Var a, Var b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  check_same_shape(av, bv, "add");
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  bool rg = requires_grad(a) || requires_grad(b);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), rg, [a, b, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
    }
  });
}

Tape::Var Tape::sub(Var a, Var b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  check_same_shape(av, bv, "sub");
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  bool rg = requires_grad(a) || requires_grad(b);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), rg, [a, b, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
    }
  });
}

Tape::Var Tape::mul(Var a, Var b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  check_same_shape(av, bv, "mul");
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  bool rg = requires_grad(a) || requires_grad(b);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), rg, [a, b, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& av2 = t.value(a);
    const Tensor& bv2 = t.value(b);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv2[i];
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av2[i];
    }
  });
}

Tape::Var Tape::minimum(Var a, Var b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  check_same_shape(av, bv, "minimum");
  Tensor out = av;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(av[i], bv[i]);
  bool rg = requires_grad(a) || requires_grad(b);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  // Ties route the gradient to the first argument.
  return push(std::move(out), rg, [a, b, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& av2 = t.value(a);
    const Tensor& bv2 = t.value(b);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (av2[i] <= bv2[i]) ga[i] += g[i];
      }
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (av2[i] > bv2[i]) gb[i] += g[i];
      }
    }
  });
}

Tape::Var Tape::neg(Var x) { return scale(x, -1.0); }

Tape::Var Tape::scale(Var x, double c) {
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= c;
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, c, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += c * g[i];
  });
}

Tape::Var Tape::add_scalar(Var x, double c) {
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c;
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  });
}

Tape::Var Tape::square(Var x) {
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= out[i];
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& xv2 = t.value(x);
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += 2.0 * xv2[i] * g[i];
  });
}

Tape::Var Tape::exp(Var x) {
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(out[i]);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& ov = t.node(self).value;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += ov[i] * g[i];
  });
}

Tape::Var Tape::log(Var x) {
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(out[i]);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& xv2 = t.value(x);
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] / xv2[i];
  });
}

Tape::Var Tape::tanh(Var x) {
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& ov = t.node(self).value;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += (1.0 - ov[i] * ov[i]) * g[i];
  });
}

Tape::Var Tape::clamp(Var x, double lo, double hi) {
  if (lo > hi) throw ContractError("clamp: lo > hi");
  const Tensor& xv = value(x);
  Tensor out = xv;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], lo, hi);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  // Subgradient convention: pass-through on the closed interval, zero outside.
  return push(std::move(out), requires_grad(x), [x, lo, hi, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& xv2 = t.value(x);
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (xv2[i] >= lo && xv2[i] <= hi) gx[i] += g[i];
    }
  });
}

Tape::Var Tape::matmul(Var a, Var b) {
  const Tensor& av = value(a);
  const Tensor& bv = value(b);
  if (av.rank() != 2 || bv.rank() != 2 || av.cols() != bv.rows()) {
    throw DimensionError("matmul: incompatible shapes");
  }
  const std::size_t m = av.rows(), k = av.cols(), n = bv.cols();
  Tensor out = Tensor::zeros({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      const double av_it = av.at(i, t);
      for (std::size_t j = 0; j < n; ++j) out.at(i, j) += av_it * bv.at(t, j);
    }
  }
  bool rg = requires_grad(a) || requires_grad(b);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), rg, [a, b, self, m, k, n](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& av2 = t.value(a);
    const Tensor& bv2 = t.value(b);
    if (t.requires_grad(a)) {
      Tensor& ga = t.grad_buffer(a);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += g.at(i, j) * bv2.at(p, j);
          ga.at(i, p) += acc;
        }
      }
    }
    if (t.requires_grad(b)) {
      Tensor& gb = t.grad_buffer(b);
      for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t j = 0; j < n; ++j) {
          double acc = 0.0;
          for (std::size_t i = 0; i < m; ++i) acc += av2.at(i, p) * g.at(i, j);
          gb.at(p, j) += acc;
        }
      }
    }
  });
}

Tape::Var Tape::add_row(Var x, Var bias) {
  const Tensor& xv = value(x);
  const Tensor& bv = value(bias);
  if (xv.rank() != 2 || bv.rank() != 1 || xv.cols() != bv.size()) {
    throw DimensionError("add_row: incompatible shapes");
  }
  const std::size_t m = xv.rows(), n = xv.cols();
  Tensor out = xv;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) += bv[j];
  }
  bool rg = requires_grad(x) || requires_grad(bias);
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), rg, [x, bias, self, m, n](Tape& t) {
    const Tensor& g = t.node(self).grad;
    if (t.requires_grad(x)) {
      Tensor& gx = t.grad_buffer(x);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
    }
    if (t.requires_grad(bias)) {
      Tensor& gb = t.grad_buffer(bias);
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += g.at(i, j);
        gb[j] += acc;
      }
    }
  });
}

Tape::Var Tape::log_softmax_rows(Var x) {
  const Tensor& xv = value(x);
  if (xv.rank() != 2) throw DimensionError("log_softmax_rows: rank-2 input required");
  const std::size_t m = xv.rows(), n = xv.cols();
  Tensor out = xv;
  for (std::size_t i = 0; i < m; ++i) {
    double mx = out.at(i, 0);
    for (std::size_t j = 1; j < n; ++j) mx = std::max(mx, out.at(i, j));
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += std::exp(out.at(i, j) - mx);
    const double lse = mx + std::log(acc);
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) -= lse;
  }
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self, m, n](Tape& t) {
    const Tensor& g = t.node(self).grad;
    const Tensor& ov = t.node(self).value;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < m; ++i) {
      double gsum = 0.0;
      for (std::size_t j = 0; j < n; ++j) gsum += g.at(i, j);
      for (std::size_t j = 0; j < n; ++j) {
        gx.at(i, j) += g.at(i, j) - std::exp(ov.at(i, j)) * gsum;
      }
    }
  });
}

Tape::Var Tape::gather_rows(Var x, std::vector<std::size_t> idx) {
  const Tensor& xv = value(x);
  if (xv.rank() != 2) throw DimensionError("gather_rows: rank-2 input required");
  if (idx.size() != xv.rows()) throw DimensionError("gather_rows: one index per row required");
  const std::size_t m = xv.rows(), n = xv.cols();
  Tensor out = Tensor::zeros({m});
  for (std::size_t i = 0; i < m; ++i) {
    if (idx[i] >= n) throw ContractError("gather_rows: index out of range");
    out[i] = xv.at(i, idx[i]);
  }
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x),
              [x, self, n, idx = std::move(idx)](Tape& t) {
                const Tensor& g = t.node(self).grad;
                Tensor& gx = t.grad_buffer(x);
                for (std::size_t i = 0; i < idx.size(); ++i) gx[i * n + idx[i]] += g[i];
              });
}

Tape::Var Tape::slice_cols(Var x, std::size_t begin, std::size_t end) {
  const Tensor& xv = value(x);
  if (xv.rank() != 2 || begin >= end || end > xv.cols()) {
    throw DimensionError("slice_cols: invalid column range");
  }
  const std::size_t m = xv.rows(), n = xv.cols(), w = end - begin;
  Tensor out = Tensor::zeros({m, w});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < w; ++j) out.at(i, j) = xv.at(i, begin + j);
  }
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self, m, n, w, begin](Tape& t) {
    const Tensor& g = t.node(self).grad;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < w; ++j) gx[i * n + begin + j] += g.at(i, j);
    }
  });
}

Tape::Var Tape::row_sum(Var x) {
  const Tensor& xv = value(x);
  if (xv.rank() != 2) throw DimensionError("row_sum: rank-2 input required");
  const std::size_t m = xv.rows(), n = xv.cols();
  Tensor out = Tensor::zeros({m});
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += xv.at(i, j);
    out[i] = acc;
  }
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self, m, n](Tape& t) {
    const Tensor& g = t.node(self).grad;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) gx[i * n + j] += g[i];
    }
  });
}

Tape::Var Tape::sum(Var x) {
  const Tensor& xv = value(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < xv.size(); ++i) acc += xv[i];
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(Tensor::scalar(acc), requires_grad(x), [x, self](Tape& t) {
    const double g = t.node(self).grad[0];
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += g;
  });
}

Tape::Var Tape::mean(Var x) {
  const Tensor& xv = value(x);
  if (xv.size() == 0) throw ContractError("mean of empty tensor");
  const double inv = 1.0 / static_cast<double>(xv.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < xv.size(); ++i) acc += xv[i];
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(Tensor::scalar(acc * inv), requires_grad(x), [x, self, inv](Tape& t) {
    const double g = t.node(self).grad[0] * inv;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += g;
  });
}

Tape::Var Tape::reshape(Var x, std::vector<std::size_t> shape) {
  const Tensor& xv = value(x);
  Tensor out = Tensor::from_values(std::move(shape),
                                   std::vector<double>(xv.values().begin(), xv.values().end()));
  Var self{static_cast<std::uint32_t>(nodes_.size())};
  return push(std::move(out), requires_grad(x), [x, self](Tape& t) {
    const Tensor& g = t.node(self).grad;
    Tensor& gx = t.grad_buffer(x);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  });
}

}  // namespace pop3d
