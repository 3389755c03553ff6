#pragma once

#include <array>
#include <cstdint>

namespace effpot {

/// xoshiro256** seeded through splitmix64. The output stream for a given seed is part
/// of the reproducibility contract and must not change.
class Rng {
 public:
  static constexpr const char* kId = "xoshiro256starstar-splitmix64-v1";

  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace effpot
