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

#include <doctest.h>

#include <algorithm>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nfbeam/fresnel.hpp"

using namespace nfbeam;

namespace {

// Adaptive Gauss-Kronrod quadrature of the defining integrals, run in long
// double at tolerance 1e-13.
FresnelPair<double> quadrature_oracle(double x) {
  using Quad = boost::math::quadrature::gauss_kronrod<long double, 61>;
  const long double half_pi = std::numbers::pi_v<long double> / 2;
  const auto c = Quad::integrate([&](long double t) { return std::cos(half_pi * t * t); },
                                 0.0L, (long double)x, 20, 1e-13L);
  const auto s = Quad::integrate([&](long double t) { return std::sin(half_pi * t * t); },
                                 0.0L, (long double)x, 20, 1e-13L);
  return {double(c), double(s)};
}

}  // namespace

TEST_CASE("Fresnel integrals vanish at zero") {
  const auto f = fresnel(0.0);
  CHECK(f.c == 0.0);
  CHECK(f.s == 0.0);
}

TEST_CASE("Fresnel integrals are odd") {
  for (double a : {1e-6, 0.3, 1.0, 1.5, 1.5000001, 2.7, 9.9, 35.0}) {
    const auto plus = fresnel(a);
    const auto minus = fresnel(-a);
    CHECK(minus.c == -plus.c);
    CHECK(minus.s == -plus.s);
  }
}

TEST_CASE("Fresnel integrals at x = 1 match the quadrature oracle") {
  const auto f = fresnel(1.0);
  const auto oracle = quadrature_oracle(1.0);
  CHECK(std::abs(f.c - oracle.c) < 1e-10);
  CHECK(std::abs(f.s - oracle.s) < 1e-10);
  // Tabulated: C(1) = 0.7798934003768228, S(1) = 0.4382591473903548.
  CHECK(f.c == doctest::Approx(0.7798934003768228).epsilon(1e-14));
  CHECK(f.s == doctest::Approx(0.4382591473903548).epsilon(1e-14));
}

TEST_CASE("series and continued fraction agree across the branch point") {
  for (double x : {1.4999999, 1.5, 1.5000001}) {
    const auto f = fresnel(x);
    const auto oracle = quadrature_oracle(x);
    CHECK(std::abs(f.c - oracle.c) < 1e-12);
    CHECK(std::abs(f.s - oracle.s) < 1e-12);
  }
}

TEST_CASE("Fresnel integrals stay bounded and approach one half") {
  // C^2 + S^2 peaks at about 0.9007 near x = 1.209.
  double peak = 0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = 10.0 * i / 10000;
    const auto f = fresnel(x);
    CHECK(std::abs(f.c) <= 0.78);
    CHECK(std::abs(f.s) <= 0.72);
    peak = std::max(peak, f.c * f.c + f.s * f.s);
  }
  CHECK(peak == doctest::Approx(0.9007).epsilon(1e-3));
  const auto far = fresnel(10.0);
  CHECK(std::abs(far.c - 0.5) < 0.04);
  CHECK(std::abs(far.s - 0.5) < 0.04);
  const auto farther = fresnel(1e4);
  CHECK(std::abs(farther.c - 0.5) < 1e-4);
  CHECK(std::abs(farther.s - 0.5) < 1e-4);
}

TEST_CASE("small arguments follow the leading Taylor terms") {
  const double x = 1e-5;
  const auto f = fresnel(x);
  CHECK(f.c == doctest::Approx(x).epsilon(1e-15));
  CHECK(f.s == doctest::Approx(std::numbers::pi / 6 * x * x * x).epsilon(1e-12));
}

TEST_CASE("Fresnel integrals match quadrature on [-10, 10]") {
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const double x = -10.0 + 20.0 * i / 199;
    const auto f = fresnel(x);
    const auto oracle = quadrature_oracle(x);
    worst = std::max({worst, std::abs(f.c - oracle.c), std::abs(f.s - oracle.s)});
  }
  CHECK(worst < 1e-10);
}
