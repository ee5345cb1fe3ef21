#pragma once

#include <cstdint>
#include <random>

#include "qts/rational.hpp"

namespace qts {

// splitmix64 step; used to derive independent per-trial seeds so that
// sharded runs agree with sequential ones stream by stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic across platforms: draws only raw mt19937_64 words and maps
// them itself. std::uniform_int_distribution is not pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t word() { return eng_(); }

  // Uniform on [lo, hi], both ends included. Modulo bias is irrelevant for
  // the tiny ranges used here.
  long long uniform(long long lo, long long hi) {
    const std::uint64_t span = std::uint64_t(hi - lo) + 1;
    return lo + (long long)(word() % span);
  }

  // Numerator in [-k, k], denominator in [1, dmax].
  Rational small_rational(int k, int dmax = 1) {
    return make_rational(Int(uniform(-k, k)), Int(uniform(1, dmax)));
  }

  bool coin() { return (word() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qts
