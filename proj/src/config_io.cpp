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

#include "nfbeam/config_io.hpp"

#include <fstream>

namespace nfbeam {

namespace {

template <typename T>
T read_key(const nlohmann::json& json, const char* key, T fallback) {
  if (!json.contains(key)) return fallback;
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::configuration, std::string("bad value for ") + key + ": " + e.what());
  }
}

}  // namespace

SystemConfig<double> system_config_from_json(const nlohmann::json& json) {
  if (!json.is_object()) throw Error(ErrorKind::configuration, "config must be a JSON object");
  const double wavelength = read_key(json, "wavelength_m", 0.01);
  const int side_count = read_key(json, "side_count", 35);
  const double spacing = read_key(json, "spacing_in_wavelengths", 10.0);
  const double power = read_key(json, "total_power_w", 1.0);
  SystemConfig<double> config{wavelength, side_count, spacing * wavelength, power};
  config.validate();
  return config;
}

nlohmann::json system_config_to_json(const SystemConfig<double>& config) {
  return {{"wavelength_m", config.wavelength},
          {"side_count", config.side_count},
          {"spacing_in_wavelengths", config.spacing / config.wavelength},
          {"total_power_w", config.total_power}};
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config file " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::configuration, "config file is not valid JSON: " + std::string(e.what()));
  }
}

}  // namespace nfbeam
