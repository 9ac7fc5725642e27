#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pop3d/mlp.hpp"

namespace pop3d {

/// Central-difference gradient of a pure scalar function:
/// (f(x + h e_i) - f(x - h e_i)) / 2h per coordinate.
std::vector<double> finite_difference_grad(
    const std::function<double(std::span<const double>)>& loss_fn, std::span<const double> at,
    double step = 1e-5);

/// Same oracle over the flat view of an MLP's parameters.
std::vector<double> finite_difference_grad(const std::function<double(const MlpParams&)>& loss_fn,
                                           const MlpParams& at, double step = 1e-5);

}  // namespace pop3d
