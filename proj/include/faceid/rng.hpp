#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "faceid/error.hpp"

namespace faceid {

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard; the distribution transforms are hand-rolled here because the
// standard library ones are implementation-defined and would break
// reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw ArgumentError("Rng::bounded: n must be positive");
    return engine_() % n;
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Gaussian sample, mean 0, given standard deviation (Box-Muller).
  double normal(double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    double u1 = unit();
    double u2 = unit();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta) * sigma;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace faceid
