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
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "nfbeam/channel.hpp"
#include "nfbeam/fresnel.hpp"

namespace nfbeam {

template <typename Scalar>
struct PowerSample {
  Point3<Scalar> location = Point3<Scalar>::Zero();
  Scalar power{};
};

/// Power received at `obs` when the array radiates with the given phases:
/// (P / N) * |sum_{n,m} t_{n,m}(obs) exp(i phase_{n,m})|^2.
template <typename Scalar>
Scalar arrived_power(const SystemConfig<Scalar>& config,
                     const PhaseMatrix<Scalar>& phases,
                     const Point3<Scalar>& obs,
                     const Amplitude<Scalar>& amplitude) {
  config.validate();
  const auto array = antenna_positions(config);
  std::complex<Scalar> sum(0);
  for (int n = 1; n <= config.side_count; ++n)
    for (int m = 1; m <= config.side_count; ++m)
      sum += green_coefficient<Scalar>(array.position(n, m), obs,
                                       config.wavelength, amplitude) *
             std::polar(Scalar(1), phases(n - 1, m - 1));
  return config.per_antenna_power() * std::norm(sum);
}

/// Array centered at the origin and focused on (0, 0, L). Precomputes the
/// per-antenna focal distances so repeated field evaluations stay cheap; the
/// focusing phase -k * rho_nm is folded into the propagation phase as
/// k * (r - rho_nm) to avoid cancelling two large phases.
template <typename Scalar>
class FocusedArray {
 public:
  FocusedArray(const SystemConfig<Scalar>& config, Scalar focus_distance)
      : config_(config), focus_distance_(focus_distance) {
    config.validate();
    if (!(focus_distance > 0))
      throw Error(ErrorKind::domain, "focus distance must be positive");
    using std::sqrt;
    offsets_ = element_offsets(config.side_count, config.spacing);
    focal_.resize(config.side_count, config.side_count);
    for (int n = 0; n < config.side_count; ++n)
      for (int m = 0; m < config.side_count; ++m)
        focal_(n, m) = sqrt(offsets_(n) * offsets_(n) + offsets_(m) * offsets_(m) +
                            focus_distance * focus_distance);
  }

  const SystemConfig<Scalar>& config() const noexcept { return config_; }
  Scalar focus_distance() const noexcept { return focus_distance_; }

  Scalar power(const Point3<Scalar>& obs, AmplitudeMode mode) const {
    using std::sqrt;
    validate_point(obs);
    const Scalar k = config_.wavenumber();
    const Scalar four_pi = Scalar(2) * two_pi<Scalar>;
    std::complex<Scalar> sum(0);
    for (int n = 0; n < config_.side_count; ++n) {
      const Scalar dx = obs.x() - offsets_(n);
      for (int m = 0; m < config_.side_count; ++m) {
        const Scalar dy = obs.y() - offsets_(m);
        const Scalar r = sqrt(dx * dx + dy * dy + obs.z() * obs.z());
        if (!(r > 0))
          throw Error(ErrorKind::singularity, "observation point coincides with an antenna");
        const Scalar rho = mode == AmplitudeMode::exact ? r : focus_distance_;
        sum += std::polar(Scalar(1) / (four_pi * rho), k * (r - focal_(n, m)));
      }
    }
    return config_.per_antenna_power() * std::norm(sum);
  }

  /// Field values at every point, in input order.
  std::vector<Scalar> power(std::span<const Point3<Scalar>> points,
                            AmplitudeMode mode, unsigned threads = 1) const {
    std::vector<Scalar> values(points.size());
    parallel_for(points.size(), threads,
                 [&](std::size_t i) { values[i] = power(points[i], mode); });
    return values;
  }

 private:
  SystemConfig<Scalar> config_;
  Scalar focus_distance_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> offsets_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> focal_;
};

/// Exact received power with the focusing phases for (0, 0, L).
template <typename Scalar>
PowerSample<Scalar> exact_power(const SystemConfig<Scalar>& config,
                                Scalar focus_distance, const Point3<Scalar>& obs,
                                AmplitudeMode mode = AmplitudeMode::exact) {
  return {obs, FocusedArray<Scalar>(config, focus_distance).power(obs, mode)};
}

/// Peak power P N / (4 pi L)^2 of perfectly aligned phasors at distance L.
template <typename Scalar>
Scalar focal_peak_power(const SystemConfig<Scalar>& config, Scalar distance) {
  const Scalar four_pi_l = Scalar(2) * two_pi<Scalar> * distance;
  return config.total_power * Scalar(config.antenna_count()) / (four_pi_l * four_pi_l);
}

/// sin^2(pi M u) / (M^2 sin^2(pi u)), the normalized array factor of M
/// uniformly phased elements. Evaluated on u reduced to [-1/2, 1/2] so the
/// grating-lobe peaks at integer u come out as exactly 1.
template <typename Scalar>
Scalar dirichlet_ratio(Scalar u, int elements) {
  using std::abs, std::round, std::sin;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar reduced = u - round(u);
  const Scalar m = Scalar(elements);
  if (abs(reduced) < Scalar(1e-9)) {
    // Taylor expansion about the peak.
    return Scalar(1) - (m * m - Scalar(1)) * pi * pi * reduced * reduced / Scalar(3);
  }
  const Scalar num = sin(pi * m * reduced);
  const Scalar den = m * sin(pi * reduced);
  return (num * num) / (den * den);
}

/// Normalized sinc, sin(pi x) / (pi x).
template <typename Scalar>
Scalar sinc(Scalar x) {
  using std::abs, std::sin;
  if (abs(x) < Scalar(1e-8)) {
    const Scalar px = std::numbers::pi_v<Scalar> * x;
    return Scalar(1) - px * px / Scalar(6);
  }
  const Scalar px = std::numbers::pi_v<Scalar> * x;
  return sin(px) / px;
}

/// Closed-form power at (x_offset, 0, L):
/// P N / (4 pi L)^2 * sinc^2(d x sqrt(N) / (lambda L)) / sinc^2(d x / (lambda L)).
/// The ratio is always evaluated through dirichlet_ratio, which equals it
/// wherever the denominator is nonzero and takes the limit where it is not.
template <typename Scalar>
PowerSample<Scalar> p1_closed_form(const SystemConfig<Scalar>& config,
                                   Scalar focus_distance, Scalar x_offset) {
  config.validate();
  if (!(focus_distance > 0))
    throw Error(ErrorKind::domain, "focus distance must be positive");
  const Scalar u = config.spacing * x_offset / (config.wavelength * focus_distance);
  return {Point3<Scalar>(x_offset, 0, focus_distance),
          focal_peak_power(config, focus_distance) *
              dirichlet_ratio(u, config.side_count)};
}

/// Parameters of the z-axis profile at offset L_bar from the focus:
/// A = pi d^2 / (lambda L), eta = L_bar / (L + L_bar),
/// b = sqrt(|A eta|) (sqrt(N) - 1) / 2.
template <typename Scalar>
struct Rho2Params {
  Scalar a_factor{};
  Scalar eta{};
  Scalar b{};
};

template <typename Scalar>
Rho2Params<Scalar> rho2_params(const SystemConfig<Scalar>& config,
                               Scalar focus_distance, Scalar z_offset) {
  using std::abs, std::sqrt;
  config.validate();
  if (!(focus_distance > 0))
    throw Error(ErrorKind::domain, "focus distance must be positive");
  if (!(focus_distance + z_offset > 0))
    throw Error(ErrorKind::domain, "observation must lie in front of the array");
  Rho2Params<Scalar> params;
  params.a_factor = std::numbers::pi_v<Scalar> * config.spacing * config.spacing /
                    (config.wavelength * focus_distance);
  params.eta = z_offset / (focus_distance + z_offset);
  params.b = sqrt(abs(params.a_factor * params.eta)) *
             Scalar(config.side_count - 1) / Scalar(2);
  return params;
}

/// Below this b the profile switches to its b = 0 value.
template <typename Scalar>
constexpr Scalar rho2_small_b = Scalar(1e-4);

/// ((sqrt(N) - 1)^4 / N) * (C^2(b) + S^2(b))^2 / b^4, and
/// (sqrt(N) - 1)^4 / N at b = 0.
template <typename Scalar>
Scalar rho2(Scalar b, int side_count) {
  if (b < 0) throw Error(ErrorKind::domain, "b must be nonnegative");
  const Scalar edge = Scalar(side_count - 1);
  const Scalar peak = edge * edge * edge * edge / Scalar(side_count * side_count);
  if (b < rho2_small_b<Scalar>) return peak;
  const auto f = fresnel(b);
  const Scalar energy = (f.c * f.c + f.s * f.s) / (b * b);
  return peak * energy * energy;
}

/// Closed-form power at (0, 0, L + L_bar): P / (4 pi (L + L_bar))^2 * rho2.
template <typename Scalar>
PowerSample<Scalar> p2_closed_form(const SystemConfig<Scalar>& config,
                                   Scalar focus_distance, Scalar z_offset) {
  const auto params = rho2_params(config, focus_distance, z_offset);
  const Scalar distance = focus_distance + z_offset;
  const Scalar four_pi_l = Scalar(2) * two_pi<Scalar> * distance;
  return {Point3<Scalar>(0, 0, distance),
          config.total_power / (four_pi_l * four_pi_l) *
              rho2(params.b, config.side_count)};
}

// The z-axis profile reduces to |eps|^4 / N with eps the Gaussian phase sum
// over the centered indices n = (1 - M)/2, ..., (M - 1)/2. The three helpers
// below give that sum, the integral that replaces it, and the Fresnel form
// used by rho2; comparing them localizes the approximation error.

/// sum_n exp(-i a_eta n^2) over the centered indices.
template <typename Scalar>
std::complex<Scalar> gaussian_phase_sum(Scalar a_eta, int side_count) {
  std::complex<Scalar> sum(0);
  const Scalar first = Scalar(1 - side_count) / Scalar(2);
  for (int j = 0; j < side_count; ++j) {
    const Scalar n = first + Scalar(j);
    sum += std::polar(Scalar(1), -a_eta * n * n);
  }
  return sum;
}

/// int_{-h}^{h} exp(-i a_eta x^2) dx with h = (M - 1)/2, through the Fresnel
/// integrals at their native pi t^2 / 2 scaling.
template <typename Scalar>
std::complex<Scalar> gaussian_phase_integral(Scalar a_eta, int side_count) {
  using std::abs, std::sqrt;
  const Scalar h = Scalar(side_count - 1) / Scalar(2);
  if (a_eta == Scalar(0)) return {Scalar(2) * h, Scalar(0)};
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar scale = sqrt(Scalar(2) * abs(a_eta) / pi);
  const auto f = fresnel(scale * h);
  const Scalar sign = a_eta > 0 ? Scalar(-1) : Scalar(1);
  return Scalar(2) / scale * std::complex<Scalar>(f.c, sign * f.s);
}

/// 2 / sqrt(|a_eta|) * (C(b) -/+ i S(b)) with b = sqrt(|a_eta|) (M - 1) / 2;
/// M - 1 at a_eta = 0. Its modulus is what rho2 raises to the fourth power.
template <typename Scalar>
std::complex<Scalar> gaussian_phase_closed_form(Scalar a_eta, int side_count) {
  using std::abs, std::sqrt;
  const Scalar edge = Scalar(side_count - 1);
  if (a_eta == Scalar(0)) return {edge, Scalar(0)};
  const Scalar root = sqrt(abs(a_eta));
  const auto f = fresnel(root * edge / Scalar(2));
  const Scalar sign = a_eta > 0 ? Scalar(-1) : Scalar(1);
  return Scalar(2) / root * std::complex<Scalar>(f.c, sign * f.s);
}

}  // namespace nfbeam
