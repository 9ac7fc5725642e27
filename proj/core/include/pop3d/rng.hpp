#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace pop3d {

/// Deterministic xoshiro256++ generator. Self-contained so that streams are
/// reproducible across platforms and their state can be checkpointed exactly.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream from (seed, stream_id). Streams with
  /// distinct ids never share a seeding path.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller. Stateless per call (no cached spare),
  /// which keeps the generator state a plain 4-word vector.
  double normal();

  /// Index in [0, probs.size()) by inverse-CDF on the given simplex.
  std::size_t categorical(std::span<const double> probs);

  std::array<std::uint64_t, 4> state() const { return state_; }
  void set_state(const std::array<std::uint64_t, 4>& s) { state_ = s; }

  bool operator==(const Rng& other) const = default;

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace pop3d
