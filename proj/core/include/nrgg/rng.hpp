#pragma once

#include <cstdint>
#include <random>

namespace nrgg {

/// SplitMix64 finalizer applied to (x + golden gamma). Frozen: seeds derived
/// through it are part of the reproducibility contract of every output file.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mix(a, b) = splitmix64(a ^ splitmix64(b)).
constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(a ^ splitmix64(b));
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
  return mix(mix(a, b), c);
}

/// Deterministic uniform stream. std::uniform_real_distribution is
/// implementation-defined, so doubles are formed from the top 53 bits.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double next() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1]; safe as a log argument.
  double next_open_zero() noexcept { return 1.0 - next(); }

  std::uint64_t next_u64() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nrgg
