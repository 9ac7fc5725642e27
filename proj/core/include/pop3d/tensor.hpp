#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pop3d {

/// Dense row-major tensor of 64-bit floats. Rank 1 and 2 cover everything in
/// this library; the shape is kept general so buffers can carry either.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor full(std::vector<std::size_t> shape, double value);
  static Tensor scalar(double value);
  /// Builds a tensor from explicit values; throws DimensionError when the
  /// value count does not match the shape product.
  static Tensor from_values(std::vector<std::size_t> shape, std::vector<double> values);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::size_t rank() const { return shape_.size(); }

  /// Row/column counts for rank-2 tensors (rank-1 counts as a single row).
  std::size_t rows() const;
  std::size_t cols() const;

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  std::span<const double> row(std::size_t r) const;

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const;

  /// Exact element-wise equality (bitwise for finite values).
  bool operator==(const Tensor& other) const = default;

 private:
  Tensor(std::vector<std::size_t> shape, std::vector<double> values)
      : shape_(std::move(shape)), values_(std::move(values)) {}

  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

}  // namespace pop3d
