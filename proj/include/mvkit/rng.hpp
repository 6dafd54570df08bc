#ifndef MVKIT_RNG_HPP
#define MVKIT_RNG_HPP

#include <cstdint>

namespace mvkit {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over <random> engines plus
/// distributions because its output stream is fully specified by the seed,
/// independent of the standard library, so sampled verification reports are
/// byte-reproducible everywhere. All "Sampled(count, seed)" strategies in
/// the library draw from this generator.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-enough draw in [0, bound); bound > 0. Modulo bias is irrelevant
  /// for the property-sampling use here.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  /// Draw in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

private:
  std::uint64_t state_;
};

} // namespace mvkit

#endif
