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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nfbeam/csv.hpp"
#include "nfbeam/edof.hpp"
#include "nfbeam/experiments.hpp"
#include "nfbeam/lobes.hpp"

using namespace nfbeam;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nfbeam_test_experiments" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> metadata;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    REQUIRE(it != header.end());
    return std::size_t(it - header.begin());
  }
  double number(std::size_t row, const std::string& name) const {
    return std::stod(rows[row][column(name)]);
  }
};

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  Table table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) {
      table.metadata.push_back(line);
    } else if (table.header.empty()) {
      table.header = split_csv_line(line);
    } else {
      table.rows.push_back(split_csv_line(line));
    }
  }
  return table;
}

// Small configurations so the whole suite runs in seconds.
json small_config(const std::string& name) {
  if (name == "power-x") return {{"points", 81}};
  if (name == "power-z") return {{"points", 61}, {"side_count", 15}};
  if (name == "field-map")
    return {{"side_count", 9}, {"x_points", 11}, {"z_points", 7}};
  if (name == "lobe-report") return {{"spacings_in_wavelengths", {0.5, 5, 10}}};
  if (name == "zres-sweep") return {{"side_counts", {10, 100}}};
  if (name == "edof-compare")
    return {{"arrays",
             {{{"label", "collected"}, {"side_count", 9}, {"spacing_in_wavelengths", 0.5}},
              {{"label", "sparse"}, {"side_count", 3}, {"spacing_in_wavelengths", 2.0}}}},
            {"rx_side_count", 3}};
  if (name == "edof-grid" || name == "edof-fit")
    return {{"side_count", 9},
            {"rx_side_count", 3},
            {"theta_step_rad", 0.25},
            {"r_min_in_wavelengths", 1000.0},
            {"r_max_in_wavelengths", 2400.0},
            {"r_step_in_wavelengths", 200.0}};
  if (name == "interference-sweep")
    return {{"side_count", 9}, {"spacings_in_wavelengths", {0.5, 10}},
            {"x_users", 9}, {"z_users", 11}};
  return json::object();
}

std::vector<fs::path> run(const std::string& name, const fs::path& dir, unsigned threads = 1) {
  return run_experiment({name, small_config(name), dir, threads});
}

int run_cli(const std::string& args, const fs::path& stderr_file) {
  const std::string command =
      std::string(NFBEAM_CLI_PATH) + " " + args + " > /dev/null 2> " + stderr_file.string();
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("catalog covers every experiment once") {
  const auto& catalog = experiment_catalog();
  CHECK(catalog.size() == 9);
  for (const auto& info : catalog) {
    CHECK(std::count_if(catalog.begin(), catalog.end(),
                        [&](const auto& other) { return other.name == info.name; }) == 1);
    CHECK_FALSE(info.figures.empty());
  }
}

TEST_CASE("config resolution fills defaults and rejects mistakes") {
  const auto c = resolve_config("power-z", json::object());
  CHECK(c.at("wavelength_m") == 0.01);
  CHECK(c.at("side_count") == 35);
  CHECK(std::abs(c.at("b_min").get<double>() - 1.9111) < 1e-3);
  const auto x = resolve_config("power-x", json::object());
  CHECK(x.at("x_max_in_wavelengths").get<double>() == doctest::Approx(2 * 80.0 / 7));

  auto kind_of = [](const std::string& name, const json& user) {
    try {
      resolve_config(name, user);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::numeric;
  };
  CHECK(kind_of("no-such", json::object()) == ErrorKind::unknown_experiment);
  CHECK(kind_of("power-x", {{"bogus", 1}}) == ErrorKind::configuration);
  CHECK(kind_of("power-x", {{"side_count", 0}}) == ErrorKind::configuration);
  CHECK(kind_of("power-x", {{"points", 1}}) == ErrorKind::configuration);
  CHECK(kind_of("power-x", {{"amplitude_mode", "loud"}}) == ErrorKind::configuration);
  CHECK(kind_of("power-z", {{"z_offset_min_in_wavelengths", -5000.0}}) == ErrorKind::configuration);
  CHECK(kind_of("edof-grid", {{"energy_fraction", 1.5}}) == ErrorKind::configuration);
  CHECK(kind_of("power-x", json::array()) == ErrorKind::configuration);
}

TEST_CASE("every experiment writes its CSV and plot script") {
  for (const auto& info : experiment_catalog()) {
    CAPTURE(info.name);
    const auto dir = scratch("each_" + info.name);
    const auto files = run(info.name, dir);
    REQUIRE(files.size() >= 2);
    CHECK(files.front() == dir / (info.name + ".csv"));
    CHECK(fs::exists(dir / (info.name + "_plot.py")));
    const auto table = read_table(files.front());
    REQUIRE(table.metadata.size() >= 4);
    CHECK(table.metadata[0] == "# tool: nfbeam 0.1.0");
    CHECK(table.metadata[1] == "# experiment: " + info.name);
    CHECK(table.metadata[2].starts_with("# config: {"));
    CHECK(std::any_of(table.metadata.begin(), table.metadata.end(),
                      [](const std::string& m) { return m.starts_with("# units: "); }));
    CHECK_FALSE(table.rows.empty());
    for (const auto& row : table.rows) CHECK(row.size() == table.header.size());
  }
}

TEST_CASE("power-x reaches below 1% of the peak inside the first-null window") {
  const auto dir = scratch("power_x_null");
  const auto files = run_experiment({"power-x", json{{"spacing_in_wavelengths", 10.0}}, dir, 1});
  const auto table = read_table(files.front());
  const double width = 80.0 / 7;
  double peak = 0, window_min = INFINITY;
  double step = table.number(1, "x_over_lambda") - table.number(0, "x_over_lambda");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double x = table.number(i, "x_over_lambda");
    const double p = table.number(i, "exact_power");
    peak = std::max(peak, p);
    if (std::abs(std::abs(x) - width) <= step) window_min = std::min(window_min, p);
  }
  CHECK(window_min < 0.01 * peak);
}

TEST_CASE("power-z marks the lobe ends and the closed form") {
  const auto dir = scratch("power_z");
  const auto files = run_experiment({"power-z", json::object(), dir, 1});
  const auto table = read_table(files.front());
  CHECK(std::count(table.metadata.begin(), table.metadata.end(), "# lobe_feasible: true") == 1);
  const auto centre = table.rows.size() / 2;
  CHECK(table.number(centre, "z_offset_over_lambda") == 0.0);
  CHECK(table.number(centre, "closed_form_power") > 0);
}

TEST_CASE("lobe-report keeps infeasible rows as data") {
  const auto dir = scratch("lobe_report");
  const auto files = run("lobe-report", dir);
  const auto table = read_table(files.front());
  bool saw_infeasible = false, saw_feasible = false;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const bool feasible = table.rows[i][table.column("feasible")] == "true";
    if (feasible) {
      saw_feasible = true;
      CHECK(table.number(i, "z_length_over_lambda") > 0);
    } else {
      saw_infeasible = true;
      CHECK(table.rows[i][table.column("length_plus_over_lambda")].empty());
    }
  }
  CHECK(saw_infeasible);
  CHECK(saw_feasible);

  json strict = small_config("lobe-report");
  strict["strict"] = true;
  try {
    run_experiment({"lobe-report", strict, scratch("lobe_strict"), 1});
    FAIL("expected a feasibility error");
  } catch (const FeasibilityError& e) {
    CHECK(e.min_spacing() > 0);
    CHECK(exit_code_for(e.kind()) == exit_infeasible_lobe);
  }
}

TEST_CASE("edof-fit writes a surface file that reproduces the fit column") {
  const auto dir = scratch("edof_fit");
  const auto files = run("edof-fit", dir);
  REQUIRE(files.size() == 3);
  std::ifstream in(dir / "edof-fit.surface.csv");
  const auto surface = read_edof_surface(in);
  const auto table = read_table(files.front());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double theta = table.number(i, "theta_rad");
    const double r = table.number(i, "r_over_lambda");
    CHECK(eval_edof_surface(surface, theta, r * 0.01, 0.01) ==
          doctest::Approx(table.number(i, "edof_fit")).epsilon(1e-12));
  }
}

TEST_CASE("edof-grid enforces the fitting constraint") {
  json c = small_config("edof-grid");
  c["side_count"] = 35;
  c["r_min_in_wavelengths"] = 100.0;
  try {
    run_experiment({"edof-grid", c, scratch("edof_invalid"), 1});
    FAIL("expected invalid input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
    CHECK(exit_code_for(e.kind()) == exit_invalid_input);
  }
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  for (const auto& info : experiment_catalog()) {
    CAPTURE(info.name);
    const auto a = run(info.name, scratch("det_a_" + info.name), 1);
    const auto b = run(info.name, scratch("det_b_" + info.name), 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(slurp(a[i]) == slurp(b[i]));
  }
}

TEST_CASE("rerunning from the metadata header reproduces the file") {
  for (const auto& info : experiment_catalog()) {
    CAPTURE(info.name);
    const auto first = run(info.name, scratch("rerun_a_" + info.name));
    const auto spec = spec_from_output(first.front(), scratch("rerun_b_" + info.name));
    CHECK(spec.name == info.name);
    const auto second = run_experiment(spec);
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(slurp(first[i]) == slurp(second[i]));
  }
}

TEST_CASE("error lines are single-line JSON") {
  const auto line = error_line(FeasibilityError("too close", 0.25));
  CHECK(line.find('\n') == std::string::npos);
  const auto parsed = json::parse(line);
  CHECK(parsed.at("error") == "feasibility");
  CHECK(parsed.at("exit_code") == exit_infeasible_lobe);
  CHECK(parsed.at("min_spacing_m") == 0.25);
  CHECK_FALSE(json::parse(error_line(Error(ErrorKind::io, "x"))).contains("min_spacing_m"));
}

TEST_CASE("command-line exit codes") {
  const auto dir = scratch("cli");
  const auto err = dir / "stderr.txt";
  auto write_config = [&](const std::string& file, const json& c) {
    std::ofstream(dir / file) << c.dump();
    return (dir / file).string();
  };

  CHECK(run_cli("list", err) == exit_ok);
  CHECK(run_cli("", err) == exit_usage);
  CHECK(run_cli("power-x", err) == exit_usage);  // --out missing

  CHECK(run_cli("not-an-experiment --out " + dir.string(), err) == exit_unknown_experiment);
  CHECK(json::parse(slurp(err)).at("error") == "unknown_experiment");

  const auto bad = write_config("bad.json", {{"side_count", -3}});
  CHECK(run_cli("power-x --config " + bad + " --out " + dir.string(), err) == exit_invalid_config);
  CHECK(json::parse(slurp(err)).at("exit_code") == exit_invalid_config);

  auto strict = small_config("lobe-report");
  strict["strict"] = true;
  const auto strict_path = write_config("strict.json", strict);
  CHECK(run_cli("lobe-report --config " + strict_path + " --out " + dir.string(), err) ==
        exit_infeasible_lobe);
  CHECK(json::parse(slurp(err)).contains("min_spacing_m"));

  // Infeasibility without strict mode is data.
  const auto lenient = write_config("lenient.json", small_config("lobe-report"));
  CHECK(run_cli("lobe-report --config " + lenient + " --out " + (dir / "lenient").string(), err) ==
        exit_ok);
  const auto table = read_table(dir / "lenient" / "lobe-report.csv");
  CHECK(table.rows[0][table.column("feasible")] == "false");

  auto grid = small_config("edof-grid");
  grid["side_count"] = 35;
  grid["r_min_in_wavelengths"] = 100.0;
  const auto grid_path = write_config("grid.json", grid);
  CHECK(run_cli("edof-grid --config " + grid_path + " --out " + dir.string(), err) ==
        exit_invalid_input);

  const auto malformed = dir / "malformed.json";
  std::ofstream(malformed) << "{ not json";
  CHECK(run_cli("power-x --config " + malformed.string() + " --out " + dir.string(), err) ==
        exit_invalid_config);

  // Rerun through the binary, with the seed flag accepted and ignored.
  const auto cfg = write_config("zres.json", small_config("zres-sweep"));
  CHECK(run_cli("zres-sweep --seed 7 --config " + cfg + " --out " + (dir / "z1").string(), err) ==
        exit_ok);
  CHECK(run_cli("rerun " + (dir / "z1" / "zres-sweep.csv").string() + " --out " +
                    (dir / "z2").string(),
                err) == exit_ok);
  CHECK(slurp(dir / "z1" / "zres-sweep.csv") == slurp(dir / "z2" / "zres-sweep.csv"));
}
