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

#include "nfbeam/geometry.hpp"
#include "support.hpp"

using namespace nfbeam;

TEST_CASE("odd array puts its middle antenna on the center") {
  const auto config = make_config(0.01, 3, 0.5);
  const auto array = antenna_positions(config);
  CHECK(array.size() == 9);
  CHECK(array.position(2, 2) == Point3<double>::Zero());
}

TEST_CASE("two-element rows sit half a spacing from the center") {
  const SystemConfig<double> config{0.5, 2, 1.0, 1.0};
  const auto array = antenna_positions(config);
  CHECK(array.position(1, 1).x() == -0.5);
  CHECK(array.position(2, 1).x() == 0.5);
  CHECK(array.position(1, 1).y() == -0.5);
  CHECK(array.position(1, 2).y() == 0.5);
}

TEST_CASE("positions are row-major with n outer and m inner") {
  const auto array = antenna_positions(make_config(0.01, 4, 2.0), Point3<double>(1, 2, 3));
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      const Point3<double> p = array.positions.col((n - 1) * 4 + (m - 1));
      CHECK(p.x() == doctest::Approx(1 + element_offset(n, 4, 0.02)));
      CHECK(p.y() == doctest::Approx(2 + element_offset(m, 4, 0.02)));
      CHECK(p.z() == 3.0);
    }
  }
}

TEST_CASE("invalid configurations are rejected") {
  auto expect_config_error = [](const SystemConfig<double>& c) {
    try {
      antenna_positions(c);
      FAIL("expected a configuration error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::configuration);
    }
  };
  expect_config_error({0.0, 4, 0.01, 1.0});
  expect_config_error({0.01, 1, 0.01, 1.0});
  expect_config_error({0.01, 4, -0.01, 1.0});
  expect_config_error({0.01, 4, 0.01, 0.0});
}

TEST_CASE("array geometry properties over random configurations") {
  testing::Generator gen;
  for (int trial = 0; trial < 200; ++trial) {
    const auto config = gen.config();
    const Point3<double> center(gen.uniform(-5, 5), gen.uniform(-5, 5), gen.uniform(-5, 5));
    const auto array = antenna_positions(config, center);
    const int side = config.side_count;
    const double scale = config.spacing * side;

    // Offsets are symmetric about the center.
    const Point3<double> offset_sum = (array.positions.colwise() - center).rowwise().sum();
    CHECK(offset_sum.norm() <= 1e-12 * scale * side * side);

    // Reversing both indices mirrors the offset.
    for (int n = 1; n <= side; ++n) {
      const int m = 1 + (n * 7) % side;
      const Point3<double> a = array.position(n, m) - center;
      const Point3<double> b = array.position(side + 1 - n, side + 1 - m) - center;
      CHECK((a + b).norm() <= 1e-12 * scale);
    }

    // Adjacent in-row antennas are one spacing apart.
    for (int m = 1; m < side; ++m)
      CHECK(std::abs((array.position(1, m + 1) - array.position(1, m)).norm() - config.spacing) <=
            1e-12 * scale);

    // The largest pairwise distance is the diagonal aperture.
    if (side <= 12) {
      double longest = 0.0;
      for (Eigen::Index i = 0; i < array.size(); ++i)
        for (Eigen::Index j = i + 1; j < array.size(); ++j)
          longest = std::max(longest, (array.positions.col(i) - array.positions.col(j)).norm());
      CHECK(longest == doctest::Approx(aperture(side, config.spacing)).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-antenna arrays are allowed for receivers") {
  const auto array = antenna_positions(1, 0.02, Point3<double>(0, 0, 4.0));
  REQUIRE(array.size() == 1);
  CHECK(array.position(1, 1) == Point3<double>(0, 0, 4.0));
}

TEST_CASE("geometry is available in extended precision") {
  const auto config = make_config<long double>(0.01L, 5, 2.0L);
  const auto array = antenna_positions(config);
  CHECK(array.position(3, 3).norm() == 0.0L);
  CHECK(array.position(5, 1).x() == doctest::Approx(double(2 * config.spacing)));
}
