// Deterministic seeded random streams.
//
// Contract: identical seed + parameters give bit-identical output on any
// platform with IEEE-754 doubles. The generator is std::mt19937_64 (exactly
// specified by the standard); uniforms take the top 53 bits of each draw;
// normals are produced by a fixed rational approximation of the inverse
// normal CDF (Acklam's coefficients), not by libm distribution objects.
#pragma once

#include <cstdint>
#include <random>

namespace awt {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stable derivation of per-task seeds from a master seed, e.g.
// derive_seed(seed, trial_index) for independent Monte Carlo trials.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

// Inverse of the standard normal CDF, u in (0,1).
double inv_norm_cdf(double u);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1): never returns an endpoint, symmetric around 1/2.
  double uniform_open01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via inverse-CDF transform of uniform_open01().
  double normal() { return inv_norm_cdf(uniform_open01()); }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace awt
