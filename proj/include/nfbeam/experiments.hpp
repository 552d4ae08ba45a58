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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfbeam/error.hpp"

namespace nfbeam {

struct ExperimentInfo {
  std::string name;
  std::string figures;
  std::string description;
};

/// Every experiment the runner knows, with the figure family it regenerates.
const std::vector<ExperimentInfo>& experiment_catalog();

struct ExperimentSpec {
  std::string name;
  nlohmann::json config = nlohmann::json::object();
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

/// Fills every missing key with its default and validates the result. The
/// returned object is what gets written to the `# config:` metadata line.
nlohmann::json resolve_config(const std::string& name, const nlohmann::json& user);

/// Runs one experiment and returns the files it wrote. Output bytes depend
/// only on the resolved config, never on the thread count.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec);

/// Rebuilds the spec that produced `csv` from its metadata lines.
ExperimentSpec spec_from_output(const std::filesystem::path& csv,
                                const std::filesystem::path& out_dir);

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_unknown_experiment = 2,
  exit_invalid_config = 3,
  exit_infeasible_lobe = 4,
  exit_invalid_input = 5,
  exit_numeric = 6,
  exit_io = 7,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Single-line, machine-readable description of a failure.
std::string error_line(const Error& error);

}  // namespace nfbeam
