#pragma once

#include <cstdint>

namespace annealpath {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: draw n is mix64(seed + (n + 1) * golden), so any
/// draw can be regenerated from (seed, n) alone and streams are identical on
/// every platform.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  constexpr explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept
      : seed_(seed), counter_(counter) {}

  std::uint64_t next() noexcept { return at(counter_++); }
  constexpr std::uint64_t at(std::uint64_t n) const noexcept { return mix64(seed_ + (n + 1) * kGolden); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Seed of child stream `index` under `master`:
///   mix64(master ^ mix64(index + golden)).
/// Used for every per-run seed (sweep points, tuner iterations, probes).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + CounterRng::kGolden));
}

}  // namespace annealpath
