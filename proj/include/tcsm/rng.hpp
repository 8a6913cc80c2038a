#pragma once

// Deterministic random numbers for sampling. std::normal_distribution is
// implementation-defined, so the normal variates are generated explicitly
// (Box-Muller on 53-bit uniforms from mt19937_64); the algorithm name below
// is recorded in every run manifest.

#include <cmath>
#include <cstdint>
#include <random>

namespace tcsm {

inline constexpr const char* kRngAlgorithm = "mt19937_64+box-muller-v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tcsm
