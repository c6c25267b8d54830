#pragma once

#include <cstdint>

namespace hwire {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std engines because its
/// output is pinned by the published algorithm on every platform, which the
/// reproducibility contract needs; std::uniform_int_distribution is not
/// portable across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased uniform draw from [0, m) by rejection.
  std::uint64_t uniform_below(std::uint64_t m) {
    if (m == 0) return 0;
    std::uint64_t threshold = -m % m;  // 2^64 mod m
    for (;;) {
      std::uint64_t v = next();
      if (v >= threshold) return v % m;
    }
  }

 private:
  std::uint64_t state_;
};

/// Independent substream seed for (seed, index) pairs; attempts, rows and
/// graph generation each draw from their own substream.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0xa0761d6478bd642full + index * 0xe7037ed1a0b428dbull));
  std::uint64_t s = g.next();
  return s ^ g.next();
}

}  // namespace hwire
