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

#include <json.hpp>

#include "nfbeam/config.hpp"

namespace nfbeam {

/// Reads wavelength_m, side_count, spacing_in_wavelengths and total_power_w.
/// Missing keys fall back to a 35 x 35 array at 10 lambda, lambda = 1 cm, 1 W.
SystemConfig<double> system_config_from_json(const nlohmann::json& json);

nlohmann::json system_config_to_json(const SystemConfig<double>& config);

/// Parses a JSON object from disk; ErrorKind::io or ErrorKind::configuration
/// on failure.
nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace nfbeam
