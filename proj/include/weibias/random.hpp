#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace weibias {

// SplitMix64 finalizer; used to derive substream seeds from keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Substreams are keyed by a list of integers
/// (e.g. master seed, cell id, replicate index), so every consumer draws the
/// same numbers regardless of the order in which substreams are created.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  RandomStream substream(std::initializer_list<std::uint64_t> keys) const {
    std::uint64_t h = mix64(seed_ ^ 0x5bd1e9955bd1e995ULL);
    for (std::uint64_t key : keys) h = mix64(h ^ mix64(key));
    return RandomStream(h);
  }

  /// Uniform double in the open interval (0, 1).
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace weibias
