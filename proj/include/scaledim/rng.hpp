#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scaledim {

// SplitMix64 step; used to derive independent sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for sub-stream `index` of a master seed. Streams are independent of
// each other and of evaluation order, so parallel consumers stay reproducible.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// mt19937_64 wrapped with fixed uniform/normal transforms. The standard
// distributions are implementation-defined, so draws go through our own
// 53-bit uniform and Box-Muller to keep sequences stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // uniform on [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform_range(double lo, double hi) {
    return lo + (hi - lo) * uniform();
  }

  // standard normal via Box-Muller; second value of each pair is cached
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace scaledim
