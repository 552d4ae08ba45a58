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

#include "nfbeam/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "nfbeam/config_io.hpp"
#include "nfbeam/csv.hpp"
#include "nfbeam/edof.hpp"
#include "nfbeam/interference.hpp"
#include "nfbeam/lobes.hpp"

namespace nfbeam {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double pi = std::numbers::pi;

const json& common_defaults() {
  static const json defaults = {
      {"wavelength_m", 0.01},
      {"side_count", 35},
      {"spacing_in_wavelengths", 10.0},
      {"total_power_w", 1.0},
  };
  return defaults;
}

json experiment_defaults(const std::string& name) {
  json d = common_defaults();
  if (name == "power-x") {
    d["focus_distance_in_wavelengths"] = 4000.0;
    d["x_min_in_wavelengths"] = nullptr;  // -2 main-lobe widths
    d["x_max_in_wavelengths"] = nullptr;  // +2 main-lobe widths
    d["points"] = 401;
    d["amplitude_mode"] = "exact";
  } else if (name == "power-z") {
    d["focus_distance_in_wavelengths"] = 4000.0;
    d["z_offset_min_in_wavelengths"] = -1500.0;
    d["z_offset_max_in_wavelengths"] = 1500.0;
    d["points"] = 601;
    d["amplitude_mode"] = "exact";
    d["b_min"] = nullptr;
  } else if (name == "field-map") {
    d["focus_distance_in_wavelengths"] = 4000.0;
    d["x_min_in_wavelengths"] = -2000.0;
    d["x_max_in_wavelengths"] = 2000.0;
    d["z_offset_min_in_wavelengths"] = -3000.0;
    d["z_offset_max_in_wavelengths"] = 3000.0;
    d["x_points"] = 201;
    d["z_points"] = 301;
    d["amplitude_mode"] = "exact";
  } else if (name == "lobe-report") {
    d["spacings_in_wavelengths"] = {0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    d["side_counts"] = {35, 45};
    d["focus_distances_in_wavelengths"] = {4000.0};
    d["b_min"] = nullptr;
    d["strict"] = false;
  } else if (name == "zres-sweep") {
    d["spacings_in_wavelengths"] = {0.5, 1, 2, 5, 10};
    d["side_counts"] = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    d["b_min"] = nullptr;
  } else if (name == "edof-compare") {
    d["arrays"] = json::array({
        {{"label", "collected"}, {"side_count", 33}, {"spacing_in_wavelengths", 0.5}},
        {{"label", "sparse"}, {"side_count", 9}, {"spacing_in_wavelengths", 2.0}},
    });
    d["rx_side_count"] = 9;
    d["rx_spacing_in_wavelengths"] = 2.0;
    d["distances_in_wavelengths"] = {400.0};
    d["energy_fraction"] = 0.999;
  } else if (name == "edof-grid" || name == "edof-fit") {
    d["rx_side_count"] = 9;
    d["rx_spacing_in_wavelengths"] = 2.0;
    d["theta_min_rad"] = 0.0;
    d["theta_max_rad"] = pi / 2 - pi / 30;
    d["theta_step_rad"] = pi / 60;
    d["r_min_in_wavelengths"] = 1000.0;
    d["r_max_in_wavelengths"] = 4000.0;
    d["r_step_in_wavelengths"] = 100.0;
    d["energy_fraction"] = 0.999;
  } else if (name == "interference-sweep") {
    d["focus_distance_in_wavelengths"] = 4000.0;
    d["spacings_in_wavelengths"] = {0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    d["x_min_in_wavelengths"] = -2000.0;
    d["x_max_in_wavelengths"] = 2000.0;
    d["z_offset_min_in_wavelengths"] = -3000.0;
    d["z_offset_max_in_wavelengths"] = 3000.0;
    d["x_users"] = 201;
    d["z_users"] = 301;
  }
  return d;
}

double number(const json& c, const char* key) {
  try {
    return c.at(key).get<double>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::configuration, std::string("expected a number for ") + key);
  }
}

int integer(const json& c, const char* key) {
  try {
    return c.at(key).get<int>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::configuration, std::string("expected an integer for ") + key);
  }
}

std::vector<double> numbers(const json& c, const char* key) {
  try {
    auto values = c.at(key).get<std::vector<double>>();
    if (values.empty()) throw Error(ErrorKind::configuration, std::string(key) + " is empty");
    return values;
  } catch (const json::exception&) {
    throw Error(ErrorKind::configuration, std::string("expected a list of numbers for ") + key);
  }
}

std::vector<int> integers(const json& c, const char* key) {
  try {
    auto values = c.at(key).get<std::vector<int>>();
    if (values.empty()) throw Error(ErrorKind::configuration, std::string(key) + " is empty");
    return values;
  } catch (const json::exception&) {
    throw Error(ErrorKind::configuration, std::string("expected a list of integers for ") + key);
  }
}

void require_range(double lo, double hi, const char* what) {
  if (!(lo < hi)) throw Error(ErrorKind::configuration, std::string(what) + " needs min < max");
}

void require_points(int count, const char* what) {
  if (count < 2) throw Error(ErrorKind::configuration, std::string(what) + " needs at least 2 points");
}

AmplitudeMode amplitude_mode(const json& c) {
  const auto mode = c.at("amplitude_mode").get<std::string>();
  if (mode == "exact") return AmplitudeMode::exact;
  if (mode == "focal_plane") return AmplitudeMode::focal_plane;
  throw Error(ErrorKind::configuration, "amplitude_mode must be exact or focal_plane");
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> values(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    values[std::size_t(i)] = i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1);
  return values;
}

double b_min_of(const json& c) {
  const double value = number(c, "b_min");
  if (!(value > 0)) throw Error(ErrorKind::configuration, "b_min must be positive");
  return value;
}

std::string optional_number(const std::optional<double>& value, double unit) {
  return value ? format_number(*value / unit) : std::string();
}

// Output plumbing shared by all experiments.
class Output {
 public:
  Output(const ExperimentSpec& spec, const json& resolved, const std::string& file)
      : path_(spec.out_dir / file), stream_(path_, std::ios::binary), csv_(stream_) {
    if (!stream_) throw Error(ErrorKind::io, "cannot write " + path_.string());
    csv_.metadata("tool", std::string("nfbeam ") + NFBEAM_VERSION);
    csv_.metadata("experiment", spec.name);
    csv_.metadata("config", resolved.dump());
  }

  CsvWriter& csv() { return csv_; }
  const fs::path& path() const { return path_; }

  fs::path close() {
    stream_.close();
    if (!stream_) throw Error(ErrorKind::io, "failed writing " + path_.string());
    return path_;
  }

 private:
  fs::path path_;
  std::ofstream stream_;
  CsvWriter csv_;
};

fs::path write_plot_script(const ExperimentSpec& spec, const std::string& body) {
  const fs::path path = spec.out_dir / (spec.name + "_plot.py");
  std::ofstream out(path, std::ios::binary);
  out << "#!/usr/bin/env python3\n"
      << "# Plots " << spec.name << ".csv written by nfbeam.\n"
      << "import pathlib\n"
      << "import matplotlib.pyplot as plt\n"
      << "import pandas as pd\n\n"
      << "here = pathlib.Path(__file__).parent\n"
      << "data = pd.read_csv(here / \"" << spec.name << ".csv\", comment=\"#\")\n"
      << body
      << "plt.tight_layout()\n"
      << "plt.savefig(here / \"" << spec.name << ".png\", dpi=150)\n";
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  return path;
}

using Runner = std::function<std::vector<fs::path>(const ExperimentSpec&, const json&)>;

std::vector<fs::path> run_power_x(const ExperimentSpec& spec, const json& c) {
  const auto config = system_config_from_json(c);
  const double lambda = config.wavelength;
  const double focus = number(c, "focus_distance_in_wavelengths") * lambda;
  const auto xs = linspace(number(c, "x_min_in_wavelengths"), number(c, "x_max_in_wavelengths"),
                           integer(c, "points"));
  std::vector<Point3<double>> points;
  for (double x : xs) points.emplace_back(x * lambda, 0.0, focus);
  const FocusedArray<double> field(config, focus);
  const auto exact = field.power(points, amplitude_mode(c), spec.threads);

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "x in wavelengths; power in W for a unit-magnitude symbol");
  out.csv().metadata("main_lobe_width_in_wavelengths",
                     format_number(main_lobe_width(config, focus).width / lambda));
  out.csv().metadata("grid_step_in_wavelengths", format_number(xs[1] - xs[0]));
  out.csv().header({"x_over_lambda", "exact_power", "closed_form_power"});
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.csv().row({format_number(xs[i]), format_number(exact[i]),
                   format_number(p1_closed_form(config, focus, xs[i] * lambda).power)});
  return {out.close(),
          write_plot_script(spec,
                            "plt.plot(data.x_over_lambda, data.exact_power, label=\"exact\")\n"
                            "plt.plot(data.x_over_lambda, data.closed_form_power, \"--\", label=\"closed form\")\n"
                            "plt.xlabel(\"x / lambda\")\nplt.ylabel(\"power (W)\")\nplt.legend()\n")};
}

std::vector<fs::path> run_power_z(const ExperimentSpec& spec, const json& c) {
  const auto config = system_config_from_json(c);
  const double lambda = config.wavelength;
  const double focus = number(c, "focus_distance_in_wavelengths") * lambda;
  const auto zs = linspace(number(c, "z_offset_min_in_wavelengths"),
                           number(c, "z_offset_max_in_wavelengths"), integer(c, "points"));
  std::vector<Point3<double>> points;
  for (double z : zs) points.emplace_back(0.0, 0.0, focus + z * lambda);
  const FocusedArray<double> field(config, focus);
  const auto exact = field.power(points, amplitude_mode(c), spec.threads);
  const auto report = feasibility_report(config, focus, b_min_of(c));

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "z offset from the focus in wavelengths; power in W for a unit-magnitude symbol");
  out.csv().metadata("grid_step_in_wavelengths", format_number(zs[1] - zs[0]));
  out.csv().metadata("lobe_feasible", format_bool(report.feasible));
  if (report.feasible) {
    out.csv().metadata("length_minus_in_wavelengths", optional_number(report.length_minus, lambda));
    out.csv().metadata("length_plus_in_wavelengths", optional_number(report.length_plus, lambda));
  }
  out.csv().header({"z_offset_over_lambda", "exact_power", "closed_form_power"});
  for (std::size_t i = 0; i < zs.size(); ++i)
    out.csv().row({format_number(zs[i]), format_number(exact[i]),
                   format_number(p2_closed_form(config, focus, zs[i] * lambda).power)});
  return {out.close(),
          write_plot_script(spec,
                            "plt.plot(data.z_offset_over_lambda, data.exact_power, label=\"exact\")\n"
                            "plt.plot(data.z_offset_over_lambda, data.closed_form_power, \"--\", label=\"closed form\")\n"
                            "plt.xlabel(\"z offset / lambda\")\nplt.ylabel(\"power (W)\")\nplt.legend()\n")};
}

std::vector<fs::path> run_field_map(const ExperimentSpec& spec, const json& c) {
  const auto config = system_config_from_json(c);
  const double lambda = config.wavelength;
  const double focus = number(c, "focus_distance_in_wavelengths") * lambda;
  const auto xs = linspace(number(c, "x_min_in_wavelengths"), number(c, "x_max_in_wavelengths"),
                           integer(c, "x_points"));
  const auto zs = linspace(number(c, "z_offset_min_in_wavelengths"),
                           number(c, "z_offset_max_in_wavelengths"), integer(c, "z_points"));
  std::vector<Point3<double>> points;
  for (double z : zs) {
    if (!(focus + z * lambda > 0))
      throw Error(ErrorKind::configuration, "field map must stay in front of the array");
    for (double x : xs) points.emplace_back(x * lambda, 0.0, focus + z * lambda);
  }
  const auto power = FocusedArray<double>(config, focus).power(points, amplitude_mode(c), spec.threads);

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "coordinates in wavelengths (z measured from the array); power in W");
  out.csv().header({"x_over_lambda", "z_over_lambda", "exact_power"});
  std::size_t k = 0;
  for (double z : zs)
    for (double x : xs)
      out.csv().row({format_number(x), format_number(focus / lambda + z), format_number(power[k++])});
  return {out.close(),
          write_plot_script(spec,
                            "grid = data.pivot(index=\"z_over_lambda\", columns=\"x_over_lambda\", values=\"exact_power\")\n"
                            "plt.pcolormesh(grid.columns, grid.index, grid.values, shading=\"auto\")\n"
                            "plt.colorbar(label=\"power (W)\")\n"
                            "plt.xlabel(\"x / lambda\")\nplt.ylabel(\"z / lambda\")\n")};
}

std::vector<fs::path> run_lobe_report(const ExperimentSpec& spec, const json& c) {
  const auto base = system_config_from_json(c);
  const double lambda = base.wavelength;
  const double b_min = b_min_of(c);
  bool any_infeasible = false;
  double needed_spacing = 0.0;

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "lengths in wavelengths; min_antennas bounds (sqrt(N) - 1)^2");
  out.csv().header({"spacing_in_wavelengths", "side_count", "n_antennas",
                    "focus_distance_in_wavelengths", "width_x_over_lambda", "farfield_sin_theta",
                    "length_minus_over_lambda", "length_plus_over_lambda", "z_length_over_lambda",
                    "feasible", "min_spacing_over_lambda", "min_antennas",
                    "z_resolution_over_lambda", "fraunhofer_over_lambda"});
  for (double focus_wl : numbers(c, "focus_distances_in_wavelengths")) {
    for (int side : integers(c, "side_counts")) {
      for (double spacing : numbers(c, "spacings_in_wavelengths")) {
        SystemConfig<double> config{lambda, side, spacing * lambda, base.total_power};
        config.validate();
        const auto r = feasibility_report(config, focus_wl * lambda, b_min);
        if (!r.feasible) {
          any_infeasible = true;
          needed_spacing = r.min_spacing;
        }
        out.csv().row({format_number(spacing), format_number(side),
                       format_number(config.antenna_count()), format_number(focus_wl),
                       format_number(r.width_x / lambda), format_number(r.farfield_sin_theta),
                       optional_number(r.length_minus, lambda), optional_number(r.length_plus, lambda),
                       optional_number(r.z_length, lambda), format_bool(r.feasible),
                       format_number(r.min_spacing / lambda), format_number(r.min_antennas),
                       format_number(r.z_resolution_distance / lambda),
                       format_number(r.fraunhofer_distance / lambda)});
      }
    }
  }
  auto csv_path = out.close();
  if (any_infeasible && c.at("strict").get<bool>())
    throw FeasibilityError("strict lobe report contains infeasible rows", needed_spacing);
  return {csv_path,
          write_plot_script(spec,
                            "for side, rows in data[data.feasible].groupby(\"side_count\"):\n"
                            "    plt.plot(rows.spacing_in_wavelengths, rows.z_length_over_lambda, \"o-\", label=f\"{side}x{side}\")\n"
                            "plt.xlabel(\"d / lambda\")\nplt.ylabel(\"main lobe length / lambda\")\nplt.legend()\n")};
}

std::vector<fs::path> run_zres_sweep(const ExperimentSpec& spec, const json& c) {
  const auto base = system_config_from_json(c);
  const double lambda = base.wavelength;
  const double b_min = b_min_of(c);
  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "distances in wavelengths");
  out.csv().header({"spacing_in_wavelengths", "side_count", "n_antennas",
                    "z_resolution_over_lambda", "fraunhofer_over_lambda"});
  for (double spacing : numbers(c, "spacings_in_wavelengths")) {
    for (int side : integers(c, "side_counts")) {
      SystemConfig<double> config{lambda, side, spacing * lambda, base.total_power};
      config.validate();
      out.csv().row({format_number(spacing), format_number(side),
                     format_number(config.antenna_count()),
                     format_number(z_resolution_distance(config, b_min) / lambda),
                     format_number(fraunhofer_distance(config) / lambda)});
    }
  }
  return {out.close(),
          write_plot_script(spec,
                            "for d, rows in data.groupby(\"spacing_in_wavelengths\"):\n"
                            "    plt.semilogy(rows.n_antennas, rows.z_resolution_over_lambda, \"o-\", label=f\"d = {d} lambda\")\n"
                            "plt.xlabel(\"N\")\nplt.ylabel(\"z resolution distance / lambda\")\nplt.legend()\n")};
}

std::vector<fs::path> run_edof_compare(const ExperimentSpec& spec, const json& c) {
  const auto base = system_config_from_json(c);
  const double lambda = base.wavelength;
  const ReceiveArray rx{integer(c, "rx_side_count"), number(c, "rx_spacing_in_wavelengths") * lambda};
  const double fraction = number(c, "energy_fraction");
  const auto distances = numbers(c, "distances_in_wavelengths");
  if (!c.at("arrays").is_array() || c.at("arrays").empty())
    throw Error(ErrorKind::configuration, "arrays must be a nonempty list");

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "distances and spacings in wavelengths; areas use side_count * spacing edges");
  out.csv().header({"label", "tx_side_count", "tx_spacing_in_wavelengths", "distance_over_lambda",
                    "edof_direct", "edof_trace", "edof_area"});
  for (const auto& entry : c.at("arrays")) {
    const std::string label = entry.value("label", "array");
    if (label.find(',') != std::string::npos)
      throw Error(ErrorKind::configuration, "array labels must not contain commas");
    const int side = integer(entry, "side_count");
    const double spacing = number(entry, "spacing_in_wavelengths");
    const auto tx = antenna_positions<double>(side, spacing * lambda, Point3<double>::Zero());
    for (double distance : distances) {
      const auto rx_array = antenna_positions<double>(rx.side_count, rx.spacing,
                                              Point3<double>(0, 0, distance * lambda));
      const auto spectrum = singular_spectrum(channel_matrix(tx, rx_array, lambda, spec.threads));
      const double tx_side = physical_side(side, spacing * lambda);
      const double rx_side = physical_side(rx.side_count, rx.spacing);
      out.csv().row({label, format_number(side), format_number(spacing), format_number(distance),
                     format_number(edof_direct(spectrum, fraction)),
                     format_number(edof_trace(spectrum)),
                     format_number(edof_area(tx_side * tx_side, rx_side * rx_side, lambda,
                                             distance * lambda))});
    }
  }
  return {out.close(),
          write_plot_script(spec,
                            "for label, rows in data.groupby(\"label\"):\n"
                            "    plt.plot(rows.distance_over_lambda, rows.edof_direct, \"o-\", label=label)\n"
                            "plt.xlabel(\"distance / lambda\")\nplt.ylabel(\"EDoF\")\nplt.legend()\n")};
}

EDoFGrid compute_grid(const ExperimentSpec& spec, const json& c, SystemConfig<double>& config) {
  config = system_config_from_json(c);
  const double lambda = config.wavelength;
  const ReceiveArray rx{integer(c, "rx_side_count"), number(c, "rx_spacing_in_wavelengths") * lambda};
  const auto thetas = stepped_range(number(c, "theta_min_rad"), number(c, "theta_max_rad"),
                                    number(c, "theta_step_rad"));
  auto radii = stepped_range(number(c, "r_min_in_wavelengths"), number(c, "r_max_in_wavelengths"),
                             number(c, "r_step_in_wavelengths"));
  for (double& r : radii) r *= lambda;
  return edof_grid(config, rx, thetas, radii, spec.threads, number(c, "energy_fraction"));
}

void write_grid_rows(CsvWriter& csv, const EDoFGrid& grid, double lambda,
                     const EDoFSurface* surface) {
  if (surface)
    csv.header({"theta_rad", "r_over_lambda", "edof_direct", "edof_area", "edof_trace", "edof_fit"});
  else
    csv.header({"theta_rad", "r_over_lambda", "edof_direct", "edof_area", "edof_trace"});
  for (std::size_t i = 0; i < grid.thetas.size(); ++i) {
    for (std::size_t j = 0; j < grid.radii.size(); ++j) {
      const auto a = Eigen::Index(i), b = Eigen::Index(j);
      std::vector<std::string> cells{format_number(grid.thetas[i]),
                                     format_number(grid.radii[j] / lambda),
                                     format_number(grid.direct(a, b)), format_number(grid.area(a, b)),
                                     format_number(grid.trace(a, b))};
      if (surface)
        cells.push_back(format_number(eval_edof_surface(*surface, grid.thetas[i], grid.radii[j], lambda)));
      csv.row(cells);
    }
  }
}

const char* grid_plot =
    "for theta, rows in data.groupby(\"theta_rad\"):\n"
    "    plt.plot(rows.r_over_lambda, rows.edof_direct, \".\", color=\"gray\")\n"
    "plt.xlabel(\"r / lambda\")\nplt.ylabel(\"EDoF\")\n";

std::vector<fs::path> run_edof_grid(const ExperimentSpec& spec, const json& c) {
  SystemConfig<double> config;
  const auto grid = compute_grid(spec, c, config);
  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "theta from +z in radians; r in wavelengths; EDoF dimensionless");
  out.csv().metadata("cells", format_number(static_cast<long long>(grid.direct.size())));
  write_grid_rows(out.csv(), grid, config.wavelength, nullptr);
  return {out.close(), write_plot_script(spec, grid_plot)};
}

std::vector<fs::path> run_edof_fit(const ExperimentSpec& spec, const json& c) {
  SystemConfig<double> config;
  const auto grid = compute_grid(spec, c, config);
  const auto surface = fit_edof_surface(grid, config.wavelength);

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "theta from +z in radians; r in wavelengths; EDoF dimensionless");
  out.csv().metadata("cells", format_number(static_cast<long long>(grid.direct.size())));
  out.csv().metadata("r_squared", format_number(surface.r_squared));
  out.csv().metadata("max_abs_residual", format_number(surface.max_abs_residual));
  write_grid_rows(out.csv(), grid, config.wavelength, &surface);
  auto grid_path = out.close();

  const fs::path surface_path = spec.out_dir / (spec.name + ".surface.csv");
  std::ofstream surface_out(surface_path, std::ios::binary);
  surface_out << "# tool: nfbeam " << NFBEAM_VERSION << '\n';
  write_edof_surface(surface_out, surface);
  surface_out.close();
  if (!surface_out) throw Error(ErrorKind::io, "failed writing " + surface_path.string());
  return {grid_path, surface_path,
          write_plot_script(spec, std::string(grid_plot) +
                                      "plt.plot(data.r_over_lambda, data.edof_fit, \"r+\", label=\"fit\")\n"
                                      "plt.legend()\n")};
}

std::vector<fs::path> run_interference_sweep(const ExperimentSpec& spec, const json& c) {
  const auto base = system_config_from_json(c);
  const double lambda = base.wavelength;
  const double focus = number(c, "focus_distance_in_wavelengths") * lambda;
  const UserGrid grid{number(c, "x_min_in_wavelengths") * lambda,
                      number(c, "x_max_in_wavelengths") * lambda,
                      number(c, "z_offset_min_in_wavelengths") * lambda,
                      number(c, "z_offset_max_in_wavelengths") * lambda,
                      integer(c, "x_users"), integer(c, "z_users")};
  grid.validate();
  const auto spacings = numbers(c, "spacings_in_wavelengths");
  const auto sweep = interference_sweep(base, focus, grid, spacings, spec.threads);

  std::ostringstream grid_spec;
  grid_spec << grid.x_count << 'x' << grid.z_count << ";x=" << format_number(grid.x_min / lambda)
            << ':' << format_number(grid.x_max / lambda)
            << ";z_offset=" << format_number(grid.z_offset_min / lambda) << ':'
            << format_number(grid.z_offset_max / lambda);

  Output out(spec, c, spec.name + ".csv");
  out.csv().metadata("units", "spacing in wavelengths; interference in W (sum over users)");
  out.csv().metadata("first_to_last_ratio",
                     format_number(sweep.front().region_interference / sweep.back().region_interference));
  out.csv().header({"spacing_in_wavelengths", "region_interference", "n_users", "grid_spec"});
  for (const auto& point : sweep)
    out.csv().row({format_number(point.spacing_in_wavelengths),
                   format_number(point.region_interference), format_number(grid.user_count()),
                   grid_spec.str()});
  return {out.close(),
          write_plot_script(spec,
                            "plt.plot(data.spacing_in_wavelengths, data.region_interference, \"o-\")\n"
                            "plt.xlabel(\"d / lambda\")\nplt.ylabel(\"region interference (W)\")\n")};
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"power-x", run_power_x},
      {"power-z", run_power_z},
      {"field-map", run_field_map},
      {"lobe-report", run_lobe_report},
      {"zres-sweep", run_zres_sweep},
      {"edof-compare", run_edof_compare},
      {"edof-grid", run_edof_grid},
      {"edof-fit", run_edof_fit},
      {"interference-sweep", run_interference_sweep},
  };
  return table;
}

// Checks that need the merged config; run before any output is produced.
void validate_resolved(const std::string& name, const json& c) {
  system_config_from_json(c);
  if (c.contains("points")) require_points(integer(c, "points"), "points");
  if (c.contains("x_points")) require_points(integer(c, "x_points"), "x_points");
  if (c.contains("z_points")) require_points(integer(c, "z_points"), "z_points");
  if (c.contains("focus_distance_in_wavelengths") &&
      !(number(c, "focus_distance_in_wavelengths") > 0))
    throw Error(ErrorKind::configuration, "focus distance must be positive");
  if (c.contains("x_min_in_wavelengths"))
    require_range(number(c, "x_min_in_wavelengths"), number(c, "x_max_in_wavelengths"), "x range");
  if (c.contains("z_offset_min_in_wavelengths")) {
    require_range(number(c, "z_offset_min_in_wavelengths"),
                  number(c, "z_offset_max_in_wavelengths"), "z offset range");
    if (name == "power-z" &&
        !(number(c, "z_offset_min_in_wavelengths") > -number(c, "focus_distance_in_wavelengths")))
      throw Error(ErrorKind::configuration, "z offsets must stay in front of the array");
  }
  if (c.contains("amplitude_mode")) amplitude_mode(c);
  if (c.contains("b_min")) b_min_of(c);
  if (c.contains("theta_min_rad")) {
    require_range(number(c, "theta_min_rad"), number(c, "theta_max_rad"), "theta range");
    require_range(number(c, "r_min_in_wavelengths"), number(c, "r_max_in_wavelengths"), "r range");
    if (!(number(c, "theta_step_rad") > 0) || !(number(c, "r_step_in_wavelengths") > 0))
      throw Error(ErrorKind::configuration, "grid steps must be positive");
  }
  if (c.contains("energy_fraction")) {
    const double f = number(c, "energy_fraction");
    if (!(f > 0 && f < 1)) throw Error(ErrorKind::configuration, "energy_fraction must lie in (0, 1)");
  }
  if (c.contains("x_users")) {
    require_points(integer(c, "x_users"), "x_users");
    require_points(integer(c, "z_users"), "z_users");
  }
  for (const char* key : {"spacings_in_wavelengths", "focus_distances_in_wavelengths",
                          "distances_in_wavelengths"}) {
    if (!c.contains(key)) continue;
    for (double v : numbers(c, key))
      if (!(v > 0)) throw Error(ErrorKind::configuration, std::string(key) + " must be positive");
  }
  if (c.contains("side_counts")) integers(c, "side_counts");
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {"power-x", "Figs. 5-6", "exact vs closed-form power along x through the focus"},
      {"power-z", "Fig. 7", "exact vs closed-form power along z through the focus"},
      {"field-map", "Figs. 8-9", "exact power over the XoZ plane"},
      {"lobe-report", "Fig. 7_2", "main-lobe width, length and feasibility per (d, N, L)"},
      {"zres-sweep", "Figs. 7_3, 10", "z-resolution and Fraunhofer distances versus N"},
      {"edof-compare", "Fig. 3", "direct EDoF of collected vs sparse arrays of equal aperture"},
      {"edof-grid", "Fig. 11", "direct, area and trace EDoF over a (theta, r) user grid"},
      {"edof-fit", "Fig. 11, Table I", "EDoF grid plus degree-5 surface fit coefficients"},
      {"interference-sweep", "Fig. 12", "region interference versus antenna spacing"},
  };
  return catalog;
}

nlohmann::json resolve_config(const std::string& name, const nlohmann::json& user) {
  if (!runners().contains(name))
    throw Error(ErrorKind::unknown_experiment, "unknown experiment '" + name + "'");
  if (!user.is_object()) throw Error(ErrorKind::configuration, "config must be a JSON object");
  json resolved = experiment_defaults(name);
  for (const auto& [key, value] : user.items()) {
    if (!resolved.contains(key))
      throw Error(ErrorKind::configuration, "unknown key '" + key + "' for " + name);
    resolved[key] = value;
  }

  const auto config = system_config_from_json(resolved);
  if (resolved.contains("b_min") && resolved["b_min"].is_null())
    resolved["b_min"] = cached_b_min().value;
  if (name == "power-x") {
    const double focus = number(resolved, "focus_distance_in_wavelengths") * config.wavelength;
    const double width = main_lobe_width(config, focus).width / config.wavelength;
    if (resolved["x_min_in_wavelengths"].is_null()) resolved["x_min_in_wavelengths"] = -2 * width;
    if (resolved["x_max_in_wavelengths"].is_null()) resolved["x_max_in_wavelengths"] = 2 * width;
  }
  validate_resolved(name, resolved);
  return resolved;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec) {
  const json resolved = resolve_config(spec.name, spec.config);
  std::error_code ec;
  fs::create_directories(spec.out_dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + spec.out_dir.string() + ": " + ec.message());
  return runners().at(spec.name)(spec, resolved);
}

ExperimentSpec spec_from_output(const std::filesystem::path& csv,
                                const std::filesystem::path& out_dir) {
  std::ifstream in(csv);
  if (!in) throw Error(ErrorKind::io, "cannot open " + csv.string());
  ExperimentSpec spec;
  spec.out_dir = out_dir;
  bool have_config = false;
  std::string line;
  while (std::getline(in, line) && line.starts_with("#")) {
    if (line.starts_with("# experiment: ")) spec.name = line.substr(14);
    if (line.starts_with("# config: ")) {
      try {
        spec.config = json::parse(line.substr(10));
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::configuration, "config metadata is not valid JSON: " + std::string(e.what()));
      }
      have_config = true;
    }
  }
  if (spec.name.empty() || !have_config)
    throw Error(ErrorKind::io, csv.string() + " has no experiment/config metadata");
  return spec;
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::unknown_experiment: return exit_unknown_experiment;
    case ErrorKind::configuration: return exit_invalid_config;
    case ErrorKind::feasibility: return exit_infeasible_lobe;
    case ErrorKind::invalid_input: return exit_invalid_input;
    case ErrorKind::io: return exit_io;
    default: return exit_numeric;
  }
}

std::string error_line(const Error& error) {
  json line = {{"error", to_string(error.kind())},
               {"exit_code", exit_code_for(error.kind())},
               {"message", error.what()}};
  if (const auto* f = dynamic_cast<const FeasibilityError*>(&error))
    line["min_spacing_m"] = f->min_spacing();
  return line.dump();
}

}  // namespace nfbeam
