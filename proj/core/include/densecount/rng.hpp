#ifndef DENSECOUNT_RNG_HPP
#define DENSECOUNT_RNG_HPP

#include <cstdint>
#include <limits>

namespace densecount {

/// SplitMix64 generator. Every random choice in the library goes through
/// this type so that splits and patch streams are portable bit-for-bit.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }

  result_type next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Unbiased: draws below 2^64 mod bound are
  /// rejected. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Independent child stream seeded from this one.
  SplitMix64 split() { return SplitMix64(next()); }

  std::uint64_t state() const { return state_; }

  friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_;
};

}  // namespace densecount

#endif  // DENSECOUNT_RNG_HPP
