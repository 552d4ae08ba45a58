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

#include "nfbeam/lobes.hpp"

namespace nfbeam {

BMin find_b_min(int side_count, double step, double start) {
  if (!(step > 0)) throw Error(ErrorKind::domain, "step must be positive");
  if (!(start > 0)) throw Error(ErrorKind::domain, "start must be positive");
  if (side_count < 2)
    throw Error(ErrorKind::configuration, "side_count must be at least 2");

  constexpr double limit = 100.0;
  double b = start;
  double previous = rho2(b, side_count);
  while (b <= limit) {
    const double candidate = b + step;
    const double value = rho2(candidate, side_count);
    if (!(value < previous)) return {b, step};
    b = candidate;
    previous = value;
  }
  throw Error(ErrorKind::search, "no local minimum of rho2 below b = 100");
}

const BMin& cached_b_min() {
  // The prefactor of rho2 does not move its minimum, so any side count works.
  static const BMin value = find_b_min(35);
  return value;
}

}  // namespace nfbeam
