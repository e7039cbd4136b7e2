#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace ipd {

/// Seeded random stream with a platform-independent draw sequence.
///
/// mt19937_64 output is fixed by the standard; the conversion to [0, 1) is
/// done here rather than through std::uniform_real_distribution, whose
/// algorithm is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    ++position_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// True with probability p. Always consumes one draw.
  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform index in [0, n). Consumes one draw.
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t seed() const { return seed_; }
  /// Number of draws consumed so far.
  std::uint64_t position() const { return position_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stable combination of a base seed with a list of integers.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

}  // namespace ipd
