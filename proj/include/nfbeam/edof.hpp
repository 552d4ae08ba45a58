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

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/SVD>

#include "nfbeam/channel.hpp"

namespace nfbeam {

/// Singular values of a channel matrix, largest first.
template <typename Scalar>
struct SingularSpectrum {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
};

template <typename Scalar>
SingularSpectrum<Scalar> singular_spectrum(const ChannelMatrix<Scalar>& g) {
  if (g.size() == 0) throw Error(ErrorKind::numeric, "empty channel matrix");
  if (!g.allFinite()) throw Error(ErrorKind::numeric, "channel matrix is not finite");
  Eigen::BDCSVD<ChannelMatrix<Scalar>> svd(g);
  if (svd.info() != Eigen::Success)
    throw Error(ErrorKind::numeric, "singular value decomposition failed");
  return {svd.singularValues()};
}

namespace detail {

template <typename Scalar>
void require_energy(const SingularSpectrum<Scalar>& spectrum) {
  if (spectrum.values.size() == 0)
    throw Error(ErrorKind::degenerate_channel, "empty singular spectrum");
  if (!(spectrum.values.maxCoeff() > 0))
    throw Error(ErrorKind::degenerate_channel, "all singular values are zero");
}

}  // namespace detail

/// Smallest n whose leading n squared singular values carry at least
/// `energy_fraction` of the total.
template <typename Scalar>
int edof_direct(const SingularSpectrum<Scalar>& spectrum,
                Scalar energy_fraction = Scalar(0.999)) {
  detail::require_energy(spectrum);
  if (!(energy_fraction > 0 && energy_fraction < 1))
    throw Error(ErrorKind::domain, "energy fraction must lie in (0, 1)");
  const auto energy = spectrum.values.array().square().eval();
  const Scalar target = energy_fraction * energy.sum();
  Scalar partial(0);
  for (Eigen::Index i = 0; i < energy.size(); ++i) {
    partial += energy(i);
    if (partial >= target) return int(i) + 1;
  }
  return int(energy.size());
}

/// (sum mu^2)^2 / sum mu^4.
template <typename Scalar>
Scalar edof_trace(const SingularSpectrum<Scalar>& spectrum) {
  detail::require_energy(spectrum);
  // Normalize first so mu^4 cannot underflow for tiny channel gains.
  const auto mu = (spectrum.values / spectrum.values.maxCoeff()).array().square().eval();
  const Scalar sum = mu.sum();
  return sum * sum / mu.square().sum();
}

/// tr^2(G G^H) / ||G G^H||_F^2, computed from the matrix itself.
template <typename Scalar>
Scalar edof_trace(const ChannelMatrix<Scalar>& g) {
  if (g.size() == 0 || !(g.cwiseAbs().maxCoeff() > 0))
    throw Error(ErrorKind::degenerate_channel, "zero channel matrix");
  const ChannelMatrix<Scalar> normalized = g / g.cwiseAbs().maxCoeff();
  const ChannelMatrix<Scalar> gram = normalized * normalized.adjoint();
  const Scalar trace = gram.trace().real();
  return trace * trace / gram.squaredNorm();
}

/// A_S A_R / (lambda^2 L^2).
template <typename Scalar>
Scalar edof_area(Scalar area_tx, Scalar area_rx, Scalar wavelength, Scalar distance) {
  if (!(area_tx > 0 && area_rx > 0 && wavelength > 0 && distance > 0))
    throw Error(ErrorKind::domain, "areas, wavelength and distance must be positive");
  return area_tx * area_rx / (wavelength * wavelength * distance * distance);
}

/// Receive array description used when placing users.
struct ReceiveArray {
  int side_count{};
  double spacing{};
};

/// d * d_rx * sqrt(N) / (lambda * r_min) < 1: the nearest receive antenna
/// sits inside the first null of the transmit beam at every range considered.
bool fitting_constraint(const SystemConfig<double>& tx, double rx_spacing, double r_min);

/// Direct, area and trace EDoF for receive arrays parallel to the transmit
/// array, centered at (r sin theta, 0, r cos theta). Indexed (theta, r).
struct EDoFGrid {
  std::vector<double> thetas;
  std::vector<double> radii;
  Eigen::MatrixXi direct;
  Eigen::MatrixXd area;
  Eigen::MatrixXd trace;
};

/// Evaluates every (theta, r) cell. Throws ErrorKind::invalid_input if the
/// fitting constraint fails at the smallest radius.
EDoFGrid edof_grid(const SystemConfig<double>& tx, const ReceiveArray& rx,
                   std::span<const double> thetas, std::span<const double> radii,
                   unsigned threads = 1, double energy_fraction = 0.999);

/// Evenly spaced values from `first` to `last` inclusive; the last step may be
/// shorter than `step`.
std::vector<double> stepped_range(double first, double last, double step);

/// f(theta, r) = sum_{i + j <= 5} p_ij cos^i(theta) (r / lambda)^j.
struct EDoFSurface {
  static constexpr int degree = 5;
  static constexpr int term_count = (degree + 1) * (degree + 2) / 2;

  std::array<double, term_count> coefficients{};
  double r_squared = 0.0;
  double max_abs_residual = 0.0;

  /// Position of p_ij in `coefficients`; i runs outer, j inner.
  static constexpr int slot(int i, int j) noexcept {
    return i * (degree + 1) - i * (i - 1) / 2 + j;
  }
  double& at(int i, int j) { return coefficients[std::size_t(slot(i, j))]; }
  double at(int i, int j) const { return coefficients[std::size_t(slot(i, j))]; }
};

/// Published coefficients for a 35 x 35 array at d = 10 lambda serving
/// 9 x 9 users at 2 lambda, r in [1000, 4000] lambda.
EDoFSurface reference_edof_surface();

double eval_edof_surface(const EDoFSurface& surface, double theta, double r,
                         double wavelength);

/// Least-squares fit on unit-norm scaled columns through a column-pivoted
/// QR. `r_over_lambda` carries ranges in wavelengths.
EDoFSurface fit_edof_surface(std::span<const double> thetas,
                             std::span<const double> r_over_lambda,
                             std::span<const double> values);

EDoFSurface fit_edof_surface(const EDoFGrid& grid, double wavelength);

/// Rows "i,j,p_ij" after '#'-prefixed r_squared and max_abs_residual lines.
void write_edof_surface(std::ostream& out, const EDoFSurface& surface);
EDoFSurface read_edof_surface(std::istream& in);

}  // namespace nfbeam
