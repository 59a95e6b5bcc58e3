#pragma once

// Counter-based random numbers: value k of stream s under seed is a pure
// function of (seed, s, k), so results never depend on call order.

#include <cstdint>

namespace mediatrix {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(seed ^ splitmix64(stream ^ 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t at(std::uint64_t counter) const { return splitmix64(key_ + counter * 0x9e3779b97f4a7c15ULL); }
  constexpr std::uint64_t next() { return at(counter_++); }
  /// Uniform in [0, 1).
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mediatrix
