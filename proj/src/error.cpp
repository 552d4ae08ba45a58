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

#include "nfbeam/error.hpp"

namespace nfbeam {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::domain: return "domain";
    case ErrorKind::feasibility: return "feasibility";
    case ErrorKind::search: return "search";
    case ErrorKind::degenerate_channel: return "degenerate_channel";
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::fitting: return "fitting";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::io: return "io";
    case ErrorKind::unknown_experiment: return "unknown_experiment";
  }
  return "unknown";
}

}  // namespace nfbeam
