#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ptree {

// Every stochastic entry point takes an explicit seed; there is no ambient
// entropy anywhere in the library.
struct RngSeed {
  std::uint64_t value = 0;
};

// SplitMix64 output function (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for stream k derived from a base seed: the k-th output of the
// SplitMix64 sequence started at base. Used for per-replica seeds so that
// parallel batches are reproducible and independent of scheduling.
inline RngSeed derive_seed(RngSeed base, std::uint64_t stream) {
  return RngSeed{splitmix64(base.value + stream * 0x9E3779B97F4A7C15ull)};
}

// Deterministic generator: std::mt19937_64 is pinned by the C++ standard, so
// identical seeds give bit-identical streams on every platform. Bounded draws
// use Lemire's multiply-shift rejection instead of std::uniform_int_distribution,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on {0, ..., bound-1}, unbiased.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ptree
