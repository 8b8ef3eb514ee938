#pragma once

#include <cstdint>
#include <limits>

namespace euler_entropy {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: one independent SplitMix64 stream per
// (seed, stream index). Sample i of a Monte Carlo run always draws from
// stream i, whichever thread evaluates it.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
// rejection; exact and platform independent, unlike
// std::uniform_int_distribution.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace euler_entropy
