#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hembed {

// splitmix64 (Steele, Lea, Flood). One additive step and two xorshift-multiply
// mixes per draw. Chosen over std::mt19937_64 so that generated instances are
// bit-identical across standard libraries and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Derive an independent stream; keeps instance generation reproducible even
  // if unrelated draws are inserted between two generator calls.
  SplitMix64 split() { return SplitMix64(next() ^ 0x5851F42D4C957F2DULL); }

  // Unbiased value in [0, bound) by rejection.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = next_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace hembed
