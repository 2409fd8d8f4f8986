#pragma once

#include <cmath>
#include <cstdint>

namespace orbitlab {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-keyed random stream.  The state is a pure function of (seed, key),
// so stream `key` of a run is bit-identical no matter how many workers
// consume the run or in which order the streams are opened.  Inside one
// stream draws are sequential.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t key) noexcept
      : state_(mix64((seed + 0x9e3779b97f4a7c15ULL) ^
                     mix64(key + 0xd1b54a32d192ed03ULL))) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // uniform in [0, 1)
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double next_uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_unit();
  }

  // standard normal, Marsaglia polar method (pairs cached)
  double next_normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Derives an unrelated seed from `seed`; used where a check needs an
// independent stream (Weyl invariance, trace-reduction consistency).
constexpr std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  return mix64(seed ^ mix64(salt + 0xa0761d6478bd642fULL));
}

}  // namespace orbitlab
