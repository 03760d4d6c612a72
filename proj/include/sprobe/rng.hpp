#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace sprobe {

// Deterministic random stream. Distributions are implemented explicitly on
// top of mt19937_64 draws so that generated datasets do not depend on the
// standard library's implementation-defined distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  // Standard normal via Box-Muller; draws two uniforms per call.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Independent child stream derived from (seed, index). Used to make
  // per-sequence/per-trial work identical regardless of evaluation order.
  Rng child(std::uint64_t index) const {
    return Rng(mix(seed_, index));
  }

  Rng child(const std::string& tag) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : tag) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return Rng(mix(seed_, h));
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the combined word.
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace sprobe
