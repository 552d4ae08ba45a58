// Shared helpers for the test suites.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "nfbeam/config.hpp"

namespace nfbeam::testing {

inline double relative_error(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

// Fixed-seed generator so every property run is reproducible.
class Generator {
 public:
  explicit Generator(std::uint64_t seed = 20261019) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  // Arrays between 2x2 and 40x40, spacing 0.5 to 12 wavelengths.
  SystemConfig<double> config() {
    const double wavelength = uniform(1e-3, 0.1);
    return make_config(wavelength, integer(2, 40), uniform(0.5, 12.0), uniform(0.1, 10.0));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nfbeam::testing
