// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The nfbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "nfbeam/error.hpp"

namespace nfbeam {

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

/// Transmit-array parameters: wavelength, antennas per side, spacing and
/// total transmit power. Every antenna radiates total_power / N.
template <typename Scalar>
struct SystemConfig {
  Scalar wavelength{};
  int side_count{};
  Scalar spacing{};
  Scalar total_power{1};

  int antenna_count() const noexcept { return side_count * side_count; }
  Scalar wavenumber() const noexcept { return two_pi<Scalar> / wavelength; }
  Scalar per_antenna_power() const noexcept {
    return total_power / Scalar(antenna_count());
  }

  void validate() const {
    using std::isfinite;
    if (!(wavelength > 0) || !isfinite(wavelength))
      throw Error(ErrorKind::configuration, "wavelength must be positive");
    if (side_count < 2)
      throw Error(ErrorKind::configuration, "side_count must be at least 2");
    if (!(spacing > 0) || !isfinite(spacing))
      throw Error(ErrorKind::configuration, "spacing must be positive");
    if (!(total_power > 0) || !isfinite(total_power))
      throw Error(ErrorKind::configuration, "total_power must be positive");
  }

  template <typename Other>
  SystemConfig<Other> cast() const {
    return {Other(wavelength), side_count, Other(spacing), Other(total_power)};
  }
};

/// Builds a config with the spacing given in wavelengths.
template <typename Scalar>
SystemConfig<Scalar> make_config(Scalar wavelength, int side_count,
                                 Scalar spacing_in_wavelengths,
                                 Scalar total_power = Scalar(1)) {
  SystemConfig<Scalar> config{wavelength, side_count,
                              spacing_in_wavelengths * wavelength, total_power};
  config.validate();
  return config;
}

template <typename Scalar>
void validate_point(const Point3<Scalar>& p) {
  if (!p.allFinite())
    throw Error(ErrorKind::domain, "point has non-finite coordinates");
}

}  // namespace nfbeam
