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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "nfbeam/error.hpp"

namespace nfbeam {

/// C(x) = int_0^x cos(pi t^2 / 2) dt and S(x) = int_0^x sin(pi t^2 / 2) dt.
template <typename Scalar>
struct FresnelPair {
  Scalar c{};
  Scalar s{};
};

namespace detail {

// Power series, used for |x| <= 1.5 where the terms stay small.
template <typename Scalar>
FresnelPair<Scalar> fresnel_series(Scalar x) {
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
  const Scalar phase = half_pi * x * x;
  Scalar term = x;  // x * phase^k / k!
  Scalar c = x;
  Scalar s = 0;
  for (int k = 1; k < 200; ++k) {
    term *= phase / Scalar(k);
    const Scalar contribution = term / Scalar(2 * k + 1);
    // Odd k feed S, even k feed C; signs alternate within each series.
    const bool to_sine = (k % 2) == 1;
    const bool negative = ((to_sine ? (k - 1) / 2 : k / 2) % 2) == 1;
    Scalar& target = to_sine ? s : c;
    target += negative ? -contribution : contribution;
    if (k > 2 && contribution <= eps * std::min(std::abs(c), std::abs(s))) break;
  }
  return {c, s};
}

// Continued fraction for erfc of a complex argument, evaluated with the
// modified Lentz method; converges quickly for x > 1.5.
template <typename Scalar>
FresnelPair<Scalar> fresnel_continued_fraction(Scalar x) {
  using Complex = std::complex<Scalar>;
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min() / eps;
  const Scalar pix2 = std::numbers::pi_v<Scalar> * x * x;

  Complex b(1, -pix2);
  Complex cc(Scalar(1) / tiny, 0);
  Complex d = Scalar(1) / b;
  Complex h = d;
  Scalar n = -1;
  bool converged = false;
  for (int k = 2; k < 1000; ++k) {
    n += 2;
    const Scalar a = -n * (n + 1);
    b += Complex(4, 0);
    d = Scalar(1) / (a * d + b);
    cc = b + a / cc;
    const Complex delta = cc * d;
    h *= delta;
    if (std::abs(delta.real() - 1) + std::abs(delta.imag()) < eps) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorKind::numeric, "Fresnel continued fraction did not converge");
  h *= Complex(x, -x);
  const Complex cs =
      Complex(Scalar(0.5), Scalar(0.5)) *
      (Scalar(1) - Complex(std::cos(pix2 / 2), std::sin(pix2 / 2)) * h);
  return {cs.real(), cs.imag()};
}

}  // namespace detail

template <typename Scalar>
FresnelPair<Scalar> fresnel(Scalar x) {
  if (x == Scalar(0)) return {};
  const Scalar ax = std::abs(x);
  const FresnelPair<Scalar> value = ax <= Scalar(1.5)
                                        ? detail::fresnel_series(ax)
                                        : detail::fresnel_continued_fraction(ax);
  if (x < 0) return {-value.c, -value.s};
  return value;
}

}  // namespace nfbeam
