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

#include <complex>
#include <ostream>

#include <Eigen/Core>

#include "nfbeam/geometry.hpp"
#include "nfbeam/parallel.hpp"

namespace nfbeam {

template <typename Scalar>
using PhaseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Rows are receive antennas, columns transmit antennas.
template <typename Scalar>
using ChannelMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

enum class AmplitudeMode { exact, focal_plane };

/// Amplitude model of the Green's function. `focal_plane` replaces the
/// 1/(4 pi rho) spreading loss by 1/(4 pi L) for every antenna.
template <typename Scalar>
struct Amplitude {
  AmplitudeMode mode = AmplitudeMode::exact;
  Scalar focal_distance{};

  static Amplitude exact() { return {}; }
  static Amplitude focal_plane(Scalar distance) {
    if (!(distance > 0))
      throw Error(ErrorKind::domain, "focal distance must be positive");
    return {AmplitudeMode::focal_plane, distance};
  }

  Scalar spreading(Scalar distance) const noexcept {
    const Scalar rho = mode == AmplitudeMode::exact ? distance : focal_distance;
    return Scalar(1) / (Scalar(2) * two_pi<Scalar> * rho);
  }
};

/// -exp(i k |rx - tx|) / (4 pi rho), with rho picked by the amplitude mode.
template <typename Scalar>
std::complex<Scalar> green_coefficient(
    const Point3<Scalar>& tx, const Point3<Scalar>& rx, Scalar wavelength,
    const Amplitude<Scalar>& amplitude = Amplitude<Scalar>::exact()) {
  if (!(wavelength > 0))
    throw Error(ErrorKind::configuration, "wavelength must be positive");
  const Scalar distance = (rx - tx).norm();
  if (!(distance > 0))
    throw Error(ErrorKind::singularity, "coincident transmit and receive points");
  return -std::polar(amplitude.spreading(distance),
                     two_pi<Scalar> / wavelength * distance);
}

/// Conjugate phases that focus the array centered at the origin on
/// (0, 0, focus_distance): -k * sqrt(x_n^2 + y_m^2 + L^2).
template <typename Scalar>
PhaseMatrix<Scalar> focusing_phases(const SystemConfig<Scalar>& config,
                                    Scalar focus_distance) {
  config.validate();
  if (!(focus_distance > 0))
    throw Error(ErrorKind::domain, "focus distance must be positive");
  using std::sqrt;
  const auto offsets = element_offsets(config.side_count, config.spacing);
  const Scalar k = config.wavenumber();
  PhaseMatrix<Scalar> phases(config.side_count, config.side_count);
  for (int n = 0; n < config.side_count; ++n)
    for (int m = 0; m < config.side_count; ++m)
      phases(n, m) = -k * sqrt(offsets(n) * offsets(n) +
                               offsets(m) * offsets(m) +
                               focus_distance * focus_distance);
  return phases;
}

/// Pairwise exact-mode Green's coefficients; entry (j, i) couples transmit
/// antenna i with receive antenna j.
template <typename Scalar>
ChannelMatrix<Scalar> channel_matrix(const ArrayGeometry<Scalar>& tx,
                                     const ArrayGeometry<Scalar>& rx,
                                     Scalar wavelength, unsigned threads = 1) {
  ChannelMatrix<Scalar> g(rx.size(), tx.size());
  parallel_for(std::size_t(tx.size()), threads, [&](std::size_t i) {
    const Point3<Scalar> source = tx.positions.col(Eigen::Index(i));
    for (Eigen::Index j = 0; j < rx.size(); ++j)
      g(j, Eigen::Index(i)) =
          green_coefficient<Scalar>(source, rx.positions.col(j), wavelength);
  });
  return g;
}

/// Long-format CSV of (row, col, re, im), header included.
void write_channel_csv(std::ostream& out, const ChannelMatrix<double>& g);

}  // namespace nfbeam
