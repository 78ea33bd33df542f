#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace clar {

// Deterministic RNG. std::mt19937_64 output is pinned by the standard, but
// the <random> distributions are not, so the mappings to doubles and bounded
// ints live here and nowhere else.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform on {0, ..., n-1}. Rejection sampling keeps it exact.
  std::size_t next_index(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % n);
  }

  // Fisher-Yates, fixed traversal order.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = next_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 step; derives independent sub-seeds for named streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace clar
