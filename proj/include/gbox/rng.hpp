#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gbox {

// Counter-based splittable stream. The state is derived by hashing
// (seed, worker, sample) through SplitMix64 finalizers, so the mapping from
// (seed, worker, sample, draw index) to output is stable and documented:
// every draw is one SplitMix64 step from the mixed key. Streams for distinct
// keys are independent for practical purposes, and sampling results do not
// depend on how samples are partitioned across workers.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t worker = 0, std::uint64_t sample = 0) {
    state_ = mix(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ worker) ^ sample);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double next_double() {
    return (next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-pi, pi).
  double next_angle() {
    return (2.0 * next_double() - 1.0) * std::numbers::pi;
  }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace gbox
