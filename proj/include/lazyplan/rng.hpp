#pragma once

#include <cstdint>

namespace lazyplan {

// Bit-level mixing step of SplitMix64 (Steele, Lea, Flood 2014).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// SplitMix64 generator. This is the generator named in the file-format
// docs: every random artifact (world, roadmap, query set) is a pure
// function of its recorded 64-bit seed through this sequence.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return mix64(z);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n) via widening multiply (n > 0).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Splitting scheme: child streams are derived by folding tagged
// components into the parent seed, one mix64 round per component.
// derive_seed(s, {a, b}) == mix64(mix64(s ^ mix64(a)) ^ mix64(b)).
inline std::uint64_t derive_seed(std::uint64_t parent,
                                 std::initializer_list<std::uint64_t> components) {
  std::uint64_t s = parent;
  for (std::uint64_t c : components) s = mix64(s ^ mix64(c));
  return s;
}

// Fixed stream tags for the benchmark's seed tree.
namespace seed_stream {
inline constexpr std::uint64_t kRoadmap = 1;
inline constexpr std::uint64_t kWorld = 2;
inline constexpr std::uint64_t kQuery = 3;
}  // namespace seed_stream

}  // namespace lazyplan
