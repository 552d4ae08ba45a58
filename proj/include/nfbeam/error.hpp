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

#include <stdexcept>
#include <string>

namespace nfbeam {

enum class ErrorKind {
  configuration,
  singularity,
  domain,
  feasibility,
  search,
  degenerate_channel,
  invalid_input,
  fitting,
  numeric,
  io,
  unknown_experiment,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when the requested main lobe does not concentrate along z.
// Carries the smallest antenna spacing that would make it concentrate.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& message, double min_spacing)
      : Error(ErrorKind::feasibility, message), min_spacing_(min_spacing) {}

  double min_spacing() const noexcept { return min_spacing_; }

 private:
  double min_spacing_;
};

}  // namespace nfbeam
