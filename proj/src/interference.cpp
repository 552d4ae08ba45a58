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

#include "nfbeam/interference.hpp"

namespace nfbeam {

void UserGrid::validate() const {
  if (!(x_min < x_max) || !(z_offset_min < z_offset_max))
    throw Error(ErrorKind::configuration, "user grid ranges must satisfy min < max");
  if (x_count < 2 || z_count < 2)
    throw Error(ErrorKind::configuration, "user grid needs at least 2 users per axis");
}

double UserGrid::cell_area() const noexcept {
  return (x_max - x_min) / (x_count - 1) * (z_offset_max - z_offset_min) / (z_count - 1);
}

std::vector<Point3<double>> UserGrid::positions(double focus_distance) const {
  validate();
  std::vector<Point3<double>> users;
  users.reserve(std::size_t(user_count()));
  const double dx = (x_max - x_min) / (x_count - 1);
  const double dz = (z_offset_max - z_offset_min) / (z_count - 1);
  for (int iz = 0; iz < z_count; ++iz) {
    const double z = focus_distance + z_offset_min + iz * dz;
    for (int ix = 0; ix < x_count; ++ix) users.emplace_back(x_min + ix * dx, 0.0, z);
  }
  return users;
}

UserGrid default_user_grid(double wavelength) {
  return {-2000 * wavelength, 2000 * wavelength, -3000 * wavelength, 3000 * wavelength,
          201, 301};
}

double region_interference(const SystemConfig<double>& config, double focus_distance,
                           const UserGrid& grid, unsigned threads) {
  const FocusedArray<double> field(config, focus_distance);
  const auto users = grid.positions(focus_distance);
  for (const auto& user : users) {
    if (!(user.z() > 0))
      throw Error(ErrorKind::domain, "users must lie in front of the array");
  }
  const auto powers = field.power(users, AmplitudeMode::focal_plane, threads);
  return pairwise_sum(powers.data(), powers.size());
}

std::vector<InterferencePoint> interference_sweep(
    const SystemConfig<double>& base, double focus_distance, const UserGrid& grid,
    std::span<const double> spacings_in_wavelengths, unsigned threads) {
  std::vector<InterferencePoint> sweep;
  for (const double spacing : spacings_in_wavelengths) {
    auto config = base;
    config.spacing = spacing * base.wavelength;
    sweep.push_back({spacing, region_interference(config, focus_distance, grid, threads)});
  }
  return sweep;
}

}  // namespace nfbeam
