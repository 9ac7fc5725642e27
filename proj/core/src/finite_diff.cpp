#include "pop3d/finite_diff.hpp"

namespace pop3d {

std::vector<double> finite_difference_grad(
    const std::function<double(std::span<const double>)>& loss_fn, std::span<const double> at,
    double step) {
  std::vector<double> point(at.begin(), at.end());
  std::vector<double> grad(at.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + step;
    const double hi = loss_fn(point);
    point[i] = saved - step;
    const double lo = loss_fn(point);
    point[i] = saved;
    grad[i] = (hi - lo) / (2.0 * step);
  }
  return grad;
}

std::vector<double> finite_difference_grad(const std::function<double(const MlpParams&)>& loss_fn,
                                           const MlpParams& at, double step) {
  MlpParams scratch = at;
  auto flat_fn = [&](std::span<const double> flat) {
    scratch.set_flat(flat);
    return loss_fn(scratch);
  };
  return finite_difference_grad(flat_fn, at.flatten(), step);
}

}  // namespace pop3d
