#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace levyou {

/// Seedable random source with derivable independent streams.
///
/// Draws are bit-exact across platforms: the engine is std::mt19937_64
/// (fully specified by the standard) and all floating-point draws are
/// produced from raw 64-bit words here rather than through the
/// implementation-defined <random> distributions. Two sources built from
/// the same (seed, stream) pair emit identical sequences; distinct stream
/// indices give statistically independent sequences with no shared state.
///
/// A RandomSource is single-owner: never share one instance between
/// concurrent tasks, derive one stream per task instead.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream_index = 0)
      : seed_(seed), stream_(stream_index) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1));
    std::uint32_t words[8];
    for (auto& w : words) w = static_cast<std::uint32_t>(splitmix64(x) >> 32);
    std::seed_seq seq(std::begin(words), std::end(words));
    engine_.seed(seq);
  }

  /// Derive the independent stream `index` of the same root seed.
  RandomSource stream(std::uint64_t index) const { return RandomSource(seed_, index); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw strictly inside (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  /// Unit-rate exponential draw.
  double exponential() { return -std::log(uniform()); }

  /// Standard normal draw (Marsaglia polar method, spare cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace levyou
