#pragma once

#include "pop3d/env.hpp"
#include "pop3d/rng.hpp"

namespace pop3d {

/// 1-D regulator: state (x, v), action clipped to [-1, 1], dynamics
/// v += 0.1 a, then x += 0.1 v. Reward is the negated cost of the
/// pre-transition position plus the current action: -(x^2 + 0.1 a^2).
/// Starts at x ~ Uniform(-1, 1), v = 0; episodes only end by truncation.
class PointMass final : public Env {
 public:
  explicit PointMass(std::size_t horizon);

  const EnvSpec& spec() const override { return spec_; }
  void seed(std::uint64_t seed) override { rng_ = Rng(seed); }
  std::vector<double> reset() override;
  StepResult step(const Action& action) override;

  /// Test hook: pins the state without touching the step counter.
  void set_state(double x, double v);
  double x() const { return x_; }
  double v() const { return v_; }

  std::array<std::uint64_t, 4> rng_state() const override { return rng_.state(); }
  void set_rng_state(const std::array<std::uint64_t, 4>& state) override { rng_.set_state(state); }

 private:
  EnvSpec spec_;
  std::size_t horizon_;
  Rng rng_;
  double x_ = 0.0;
  double v_ = 0.0;
  std::size_t steps_ = 0;
  double episode_return_ = 0.0;
  bool active_ = false;
};

std::unique_ptr<Env> point_mass(std::size_t horizon);

}  // namespace pop3d
