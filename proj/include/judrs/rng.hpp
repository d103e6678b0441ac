#pragma once

#include <cstdint>
#include <limits>

namespace judrs {

// Counter-friendly 64-bit generator (SplitMix64). Used for all Monte-Carlo
// sampling: a fresh stream can be derived per (experiment, point, trial)
// tuple, which makes results independent of worker count and evaluation
// order. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Stateless avalanche mix, used to fold stream indices into a base seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

// Deterministic sub-stream seed for hierarchical derivation
// (seed, a, b, c) -> seed'. Any index left at its default keeps the
// derivation unambiguous.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(seed ^ 0x2545f4914f6cdd1dull);
  s = mix64(s + 0x9e3779b97f4a7c15ull * (a + 1));
  s = mix64(s + 0x9e3779b97f4a7c15ull * (b + 1));
  s = mix64(s + 0x9e3779b97f4a7c15ull * (c + 1));
  return s;
}

// Uniform double in [0, 1) from the top 53 bits.
template <class Urbg>
double uniform01(Urbg& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

} // namespace judrs
