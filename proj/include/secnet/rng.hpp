#pragma once

#include <cmath>
#include <cstdint>

namespace secnet {

/// Counter-based random stream in the SplitMix64 family (Steele, Lea and
/// Flood, 2014). A stream is identified by (seed, index, tag); the n-th output
/// is mix64(key + n * 0x9e3779b97f4a7c15). Streams are independent of the
/// order in which they are created, so serial and parallel runs agree.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t tag)
      : key_(mix64(seed ^ mix64(index ^ mix64(tag + 0x2545f4914f6cdd1dULL)))) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    counter_ += 0x9e3779b97f4a7c15ULL;
    return mix64(key_ + counter_);
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  /// Unit-mean exponential by inversion.
  double exponential() { return -std::log(uniform()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace secnet
