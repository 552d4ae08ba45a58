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

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "nfbeam/config.hpp"

namespace nfbeam {

/// Square planar array parallel to the XoY plane. Antenna (n, m), both
/// 1-based, lives in column (n - 1) * side_count + (m - 1) of `positions`.
template <typename Scalar>
struct ArrayGeometry {
  int side_count{};
  Scalar spacing{};
  Point3<Scalar> center = Point3<Scalar>::Zero();
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> positions;

  Eigen::Index size() const noexcept { return positions.cols(); }

  static constexpr Eigen::Index index(int n, int m, int side_count) noexcept {
    return Eigen::Index(n - 1) * side_count + (m - 1);
  }

  Point3<Scalar> position(int n, int m) const {
    return positions.col(index(n, m, side_count));
  }
};

/// In-plane offset of the n-th antenna (1-based) from the array center:
/// (n - (side_count + 1) / 2) * spacing.
template <typename Scalar>
Scalar element_offset(int n, int side_count, Scalar spacing) noexcept {
  return (Scalar(n) - Scalar(side_count + 1) / Scalar(2)) * spacing;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> element_offsets(int side_count,
                                                         Scalar spacing) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> offsets(side_count);
  for (int n = 1; n <= side_count; ++n)
    offsets(n - 1) = element_offset(n, side_count, spacing);
  return offsets;
}

/// Array of side_count x side_count antennas; side_count may be 1 here so
/// that single-antenna receivers can be described.
template <typename Scalar>
ArrayGeometry<Scalar> antenna_positions(int side_count, Scalar spacing,
                                        const Point3<Scalar>& center) {
  if (side_count < 1)
    throw Error(ErrorKind::configuration, "side_count must be positive");
  if (!(spacing > 0))
    throw Error(ErrorKind::configuration, "spacing must be positive");
  validate_point(center);

  ArrayGeometry<Scalar> array;
  array.side_count = side_count;
  array.spacing = spacing;
  array.center = center;
  array.positions.resize(3, Eigen::Index(side_count) * side_count);
  const auto offsets = element_offsets(side_count, spacing);
  for (int n = 1; n <= side_count; ++n) {
    for (int m = 1; m <= side_count; ++m) {
      array.positions.col(ArrayGeometry<Scalar>::index(n, m, side_count)) =
          center + Point3<Scalar>(offsets(n - 1), offsets(m - 1), Scalar(0));
    }
  }
  return array;
}

template <typename Scalar>
ArrayGeometry<Scalar> antenna_positions(const SystemConfig<Scalar>& config,
                                        const Point3<Scalar>& center =
                                            Point3<Scalar>::Zero()) {
  config.validate();
  return antenna_positions(config.side_count, config.spacing, center);
}

/// Edge length of the square area an array occupies, one spacing per antenna.
template <typename Scalar>
Scalar physical_side(int side_count, Scalar spacing) noexcept {
  return Scalar(side_count) * spacing;
}

/// Diagonal aperture sqrt(2) * spacing * (side_count - 1).
template <typename Scalar>
Scalar aperture(int side_count, Scalar spacing) noexcept {
  using std::sqrt;
  return sqrt(Scalar(2)) * spacing * Scalar(side_count - 1);
}

}  // namespace nfbeam
