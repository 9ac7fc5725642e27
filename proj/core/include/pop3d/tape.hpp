#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pop3d/tensor.hpp"

namespace pop3d {

/// Reverse-mode tape over dense tensors. Operations record a backward closure
/// as they execute; backward() replays them newest-first, which is a valid
/// topological order because parents are always created before children.
///
/// A tape is single-threaded and consumed by backward(); call reset() to
/// reuse the allocation. Gradients are accumulated only along paths that
/// reach an input(), so constants cost no gradient storage.
class Tape {
 public:
  struct Var {
    std::uint32_t index = UINT32_MAX;
    bool valid() const { return index != UINT32_MAX; }
  };

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf that participates in differentiation.
  Var input(Tensor value);
  /// Data node; gradients never flow into it.
  Var constant(Tensor value);

  // Elementwise (shapes must match exactly).
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var minimum(Var a, Var b);

  Var neg(Var x);
  Var scale(Var x, double c);
  Var add_scalar(Var x, double c);
  Var square(Var x);
  Var exp(Var x);
  Var log(Var x);
  Var tanh(Var x);
  Var clamp(Var x, double lo, double hi);

  // Linear algebra and structure.
  Var matmul(Var a, Var b);                    // [m,k] x [k,n] -> [m,n]
  Var add_row(Var x, Var bias);                // [m,n] + [n], broadcast over rows
  Var log_softmax_rows(Var x);                 // rowwise, numerically stable
  Var gather_rows(Var x, std::vector<std::size_t> idx);  // out[i] = x(i, idx[i])
  Var slice_cols(Var x, std::size_t begin, std::size_t end);
  Var row_sum(Var x);                          // [m,n] -> [m]
  Var sum(Var x);                              // -> scalar
  Var mean(Var x);                             // -> scalar
  Var reshape(Var x, std::vector<std::size_t> shape);

  /// Accumulates d(loss)/d(node) for every node reachable from an input.
  /// The loss must be a scalar; a tape can only be walked once per reset().
  void backward(Var loss);

  const Tensor& value(Var v) const;
  /// Gradient after backward(); zeros of the value's shape when the node was
  /// never reached.
  Tensor grad(Var v) const;
  bool requires_grad(Var v) const;

  void reset();
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool requires_grad = false;
    bool grad_live = false;
    std::function<void(Tape&)> pull;
  };

  Var push(Tensor value, bool requires_grad, std::function<void(Tape&)> pull);
  Node& node(Var v);
  const Node& node(Var v) const;
  /// Gradient buffer of `v`, allocated as zeros on first touch.
  Tensor& grad_buffer(Var v);

  std::vector<Node> nodes_;
  bool consumed_ = false;
};

}  // namespace pop3d
