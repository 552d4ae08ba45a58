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

#include <span>
#include <vector>

#include "nfbeam/powerfield.hpp"

namespace nfbeam {

/// Users on a uniform grid in the XoZ plane. z offsets are measured from the
/// focus; both ranges include their end points.
struct UserGrid {
  double x_min{};
  double x_max{};
  double z_offset_min{};
  double z_offset_max{};
  int x_count{};
  int z_count{};

  void validate() const;
  long long user_count() const noexcept { return static_cast<long long>(x_count) * z_count; }
  double cell_area() const noexcept;
  /// User positions with x varying fastest.
  std::vector<Point3<double>> positions(double focus_distance) const;
};

/// Default region: x in [-2000, 2000] lambda, z offset in [-3000, 3000]
/// lambda, 201 x 301 users.
UserGrid default_user_grid(double wavelength);

/// Sum of focal-plane-amplitude power over every user when the array
/// focuses on (0, 0, L). Per-user powers are reduced in a fixed pairwise
/// order, so the result does not depend on `threads`.
double region_interference(const SystemConfig<double>& config, double focus_distance,
                           const UserGrid& grid, unsigned threads = 1);

struct InterferencePoint {
  double spacing_in_wavelengths{};
  double region_interference{};
};

std::vector<InterferencePoint> interference_sweep(
    const SystemConfig<double>& base, double focus_distance, const UserGrid& grid,
    std::span<const double> spacings_in_wavelengths, unsigned threads = 1);

}  // namespace nfbeam
