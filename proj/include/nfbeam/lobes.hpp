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
#include <optional>

#include "nfbeam/geometry.hpp"
#include "nfbeam/powerfield.hpp"

namespace nfbeam {

/// First local minimum of rho2 found by an upward walk, with the walk step.
struct BMin {
  double value{};
  double step{};
};

inline constexpr double default_b_min_start = 1e-4;
inline constexpr double default_b_min_step = 1e-3;

/// Walks b upward from `start` by `step` while rho2 keeps decreasing and
/// returns the last b before it stops. Throws ErrorKind::search if the walk
/// passes b = 100.
BMin find_b_min(int side_count, double step = default_b_min_step,
                double start = default_b_min_start);

/// find_b_min with the default start and step, computed once per process.
const BMin& cached_b_min();

template <typename Scalar>
struct MainLobeWidth {
  Scalar width{};               // lambda L / (d sqrt(N))
  Scalar farfield_sin_theta{};  // lambda / (d sqrt(N))
};

template <typename Scalar>
MainLobeWidth<Scalar> main_lobe_width(const SystemConfig<Scalar>& config,
                                      Scalar focus_distance) {
  config.validate();
  if (!(focus_distance > 0))
    throw Error(ErrorKind::domain, "focus distance must be positive");
  const Scalar sin_theta =
      config.wavelength / (config.spacing * Scalar(config.side_count));
  return {sin_theta * focus_distance, sin_theta};
}

/// pi d^2 (sqrt(N) - 1)^2 / (4 b_min^2 lambda L). The main lobe concentrates
/// along z exactly when this exceeds 1.
template <typename Scalar>
Scalar concentration_ratio(const SystemConfig<Scalar>& config,
                           Scalar focus_distance, Scalar b_min) {
  const Scalar edge = Scalar(config.side_count - 1);
  return std::numbers::pi_v<Scalar> * config.spacing * config.spacing * edge * edge /
         (Scalar(4) * b_min * b_min * config.wavelength * focus_distance);
}

/// Smallest spacing with a concentrated main lobe:
/// 2 b_min sqrt(lambda L / pi) / (sqrt(N) - 1).
template <typename Scalar>
Scalar min_spacing(const SystemConfig<Scalar>& config, Scalar focus_distance,
                   Scalar b_min) {
  using std::sqrt;
  return Scalar(2) * b_min *
         sqrt(config.wavelength * focus_distance / std::numbers::pi_v<Scalar>) /
         Scalar(config.side_count - 1);
}

/// Lower bound on (sqrt(N) - 1)^2: 4 b_min^2 lambda L / (pi d^2).
template <typename Scalar>
Scalar min_antennas(const SystemConfig<Scalar>& config, Scalar focus_distance,
                    Scalar b_min) {
  return Scalar(4) * b_min * b_min * config.wavelength * focus_distance /
         (std::numbers::pi_v<Scalar> * config.spacing * config.spacing);
}

/// 2 D^2 / lambda with D = sqrt(2) d (sqrt(N) - 1).
template <typename Scalar>
Scalar fraunhofer_distance(const SystemConfig<Scalar>& config) {
  const Scalar d = aperture(config.side_count, config.spacing);
  return Scalar(2) * d * d / config.wavelength;
}

/// Largest focus distance with a concentrated main lobe,
/// pi / (16 b_min^2) times the Fraunhofer distance.
template <typename Scalar>
Scalar z_resolution_distance(const SystemConfig<Scalar>& config, Scalar b_min) {
  const Scalar edge = Scalar(config.side_count - 1);
  return std::numbers::pi_v<Scalar> * config.spacing * config.spacing * edge * edge /
         (Scalar(4) * b_min * b_min * config.wavelength);
}

template <typename Scalar>
struct LobeLength {
  Scalar minus{};  // <= 0, toward the array
  Scalar plus{};   // > 0, away from the array
  Scalar total() const noexcept { return plus - minus; }
};

/// Axial extent of the main lobe around the focus:
/// plus = L / (R - 1), minus = -L / (R + 1), R = concentration_ratio.
template <typename Scalar>
LobeLength<Scalar> main_lobe_length(const SystemConfig<Scalar>& config,
                                    Scalar focus_distance, Scalar b_min) {
  config.validate();
  if (!(focus_distance > 0))
    throw Error(ErrorKind::domain, "focus distance must be positive");
  if (!(b_min > 0)) throw Error(ErrorKind::domain, "b_min must be positive");
  const Scalar ratio = concentration_ratio(config, focus_distance, b_min);
  if (!(ratio > 1)) {
    throw FeasibilityError(
        "main lobe does not concentrate along z; spacing must exceed min_spacing",
        double(min_spacing(config, focus_distance, b_min)));
  }
  return {-focus_distance / (ratio + 1), focus_distance / (ratio - 1)};
}

/// Spacing at which the main lobe reaches a given total length. Inverts
/// total = 2 L R / (R^2 - 1) for R > 1 and maps R back to d.
template <typename Scalar>
Scalar spacing_for_lobe_length(int side_count, Scalar wavelength,
                               Scalar focus_distance, Scalar target_length,
                               Scalar b_min) {
  using std::sqrt;
  if (!(target_length > 0))
    throw Error(ErrorKind::domain, "target lobe length must be positive");
  const Scalar ratio =
      (focus_distance + sqrt(focus_distance * focus_distance +
                             target_length * target_length)) /
      target_length;
  return sqrt(ratio * Scalar(4) * b_min * b_min * wavelength * focus_distance /
              std::numbers::pi_v<Scalar>) /
         Scalar(side_count - 1);
}

template <typename Scalar>
struct LobeReport {
  Scalar width_x{};
  Scalar farfield_sin_theta{};
  std::optional<Scalar> length_minus;
  std::optional<Scalar> length_plus;
  std::optional<Scalar> z_length;
  bool feasible = false;
  Scalar min_spacing{};
  Scalar min_antennas{};
  Scalar z_resolution_distance{};
  Scalar fraunhofer_distance{};
};

/// Every lobe figure for one (config, L). Infeasibility is reported in the
/// `feasible` flag and leaves the length fields empty.
template <typename Scalar>
LobeReport<Scalar> feasibility_report(const SystemConfig<Scalar>& config,
                                      Scalar focus_distance, Scalar b_min) {
  const auto width = main_lobe_width(config, focus_distance);
  LobeReport<Scalar> report;
  report.width_x = width.width;
  report.farfield_sin_theta = width.farfield_sin_theta;
  report.feasible = concentration_ratio(config, focus_distance, b_min) > 1;
  report.min_spacing = min_spacing(config, focus_distance, b_min);
  report.min_antennas = min_antennas(config, focus_distance, b_min);
  report.z_resolution_distance = z_resolution_distance(config, b_min);
  report.fraunhofer_distance = fraunhofer_distance(config);
  if (report.feasible) {
    const auto length = main_lobe_length(config, focus_distance, b_min);
    report.length_minus = length.minus;
    report.length_plus = length.plus;
    report.z_length = length.total();
  }
  return report;
}

}  // namespace nfbeam
