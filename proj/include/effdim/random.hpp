#ifndef EFFDIM_RANDOM_HPP
#define EFFDIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace effdim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent streams: one per (seed, stream, index) triple. Streams are
// fixed tags so that, e.g., the theta sample and the per-point Fisher
// generators never share state.
enum class Stream : std::uint64_t {
  ThetaSample = 1,
  FisherPoint = 2,
  Validation = 3,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream,
                                    std::uint64_t index = 0) noexcept {
  return mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(stream)) + index);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(derive_seed(seed, stream, index));
}

}  // namespace effdim

#endif  // EFFDIM_RANDOM_HPP
