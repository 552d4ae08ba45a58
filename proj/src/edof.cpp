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

#include "nfbeam/edof.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/QR>

#include "nfbeam/csv.hpp"

namespace nfbeam {

bool fitting_constraint(const SystemConfig<double>& tx, double rx_spacing, double r_min) {
  tx.validate();
  if (!(rx_spacing >= 0) || !(r_min > 0))
    throw Error(ErrorKind::domain, "receive spacing and r_min must be positive");
  return tx.spacing * rx_spacing * tx.side_count / (tx.wavelength * r_min) < 1.0;
}

std::vector<double> stepped_range(double first, double last, double step) {
  if (!(step > 0) || !(last >= first))
    throw Error(ErrorKind::domain, "range needs first <= last and a positive step");
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) values.push_back(first + double(i) * step);
  if (last - values.back() > 1e-9 * std::max(1.0, std::abs(last))) values.push_back(last);
  return values;
}

EDoFGrid edof_grid(const SystemConfig<double>& tx, const ReceiveArray& rx,
                   std::span<const double> thetas, std::span<const double> radii,
                   unsigned threads, double energy_fraction) {
  tx.validate();
  if (thetas.empty() || radii.empty())
    throw Error(ErrorKind::invalid_input, "empty angle or range vector");
  if (rx.side_count < 1 || !(rx.spacing > 0))
    throw Error(ErrorKind::configuration, "invalid receive array");
  const double r_min = *std::min_element(radii.begin(), radii.end());
  if (!fitting_constraint(tx, rx.spacing, r_min))
    throw Error(ErrorKind::invalid_input,
                "Invalid Input: d * d_rx * sqrt(N) / (lambda * r_min) must be below 1");

  const auto tx_array = antenna_positions(tx);
  const double tx_side = physical_side(tx.side_count, tx.spacing);
  const double rx_side = physical_side(rx.side_count, rx.spacing);

  EDoFGrid grid;
  grid.thetas.assign(thetas.begin(), thetas.end());
  grid.radii.assign(radii.begin(), radii.end());
  const auto rows = Eigen::Index(thetas.size());
  const auto cols = Eigen::Index(radii.size());
  grid.direct.resize(rows, cols);
  grid.area.resize(rows, cols);
  grid.trace.resize(rows, cols);

  parallel_for(std::size_t(rows * cols), threads, [&](std::size_t cell) {
    const auto i = Eigen::Index(cell) / cols;
    const auto j = Eigen::Index(cell) % cols;
    const double theta = thetas[std::size_t(i)];
    const double r = radii[std::size_t(j)];
    const Point3<double> center(r * std::sin(theta), 0.0, r * std::cos(theta));
    const auto rx_array = antenna_positions(rx.side_count, rx.spacing, center);
    const auto spectrum = singular_spectrum(channel_matrix(tx_array, rx_array, tx.wavelength));
    grid.direct(i, j) = edof_direct(spectrum, energy_fraction);
    grid.trace(i, j) = edof_trace(spectrum);
    grid.area(i, j) = edof_area(tx_side * tx_side, rx_side * rx_side, tx.wavelength, r);
  });
  return grid;
}

EDoFSurface reference_edof_surface() {
  EDoFSurface s;
  s.at(0, 0) = 63.36;
  s.at(0, 1) = -0.1048;
  s.at(0, 2) = 8.034e-5;
  s.at(0, 3) = -3.129e-8;
  s.at(0, 4) = 6.014e-12;
  s.at(0, 5) = -4.513e-16;
  s.at(1, 0) = 204;
  s.at(1, 1) = -0.2026;
  s.at(1, 2) = 9.282e-5;
  s.at(1, 3) = -1.957e-8;
  s.at(1, 4) = 1.518e-12;
  s.at(2, 0) = -91.16;
  s.at(2, 1) = 0.03111;
  s.at(2, 2) = -1.074e-5;
  s.at(2, 3) = 1.609e-9;
  s.at(3, 0) = 95.1;
  s.at(3, 1) = 0.003449;
  s.at(3, 2) = -1.735e-6;
  s.at(4, 0) = -84.82;
  s.at(4, 1) = 0.0008277;
  s.at(5, 0) = 29.58;
  return s;
}

double eval_edof_surface(const EDoFSurface& surface, double theta, double r,
                         double wavelength) {
  const double c = std::cos(theta);
  const double x = r / wavelength;
  // Horner in x for each power of cos(theta), then Horner in cos(theta).
  double total = 0.0;
  for (int i = EDoFSurface::degree; i >= 0; --i) {
    double row = 0.0;
    for (int j = EDoFSurface::degree - i; j >= 0; --j) row = row * x + surface.at(i, j);
    total = total * c + row;
  }
  return total;
}

EDoFSurface fit_edof_surface(std::span<const double> thetas,
                             std::span<const double> r_over_lambda,
                             std::span<const double> values) {
  const std::size_t samples = values.size();
  if (thetas.size() != samples || r_over_lambda.size() != samples)
    throw Error(ErrorKind::fitting, "sample vectors differ in length");
  std::set<std::pair<double, double>> distinct;
  for (std::size_t k = 0; k < samples; ++k) distinct.emplace(thetas[k], r_over_lambda[k]);
  if (distinct.size() < std::size_t(EDoFSurface::term_count))
    throw Error(ErrorKind::fitting, "surface fit needs at least 21 distinct samples");

  Eigen::MatrixXd design(Eigen::Index(samples), EDoFSurface::term_count);
  for (std::size_t k = 0; k < samples; ++k) {
    const double c = std::cos(thetas[k]);
    for (int i = 0; i <= EDoFSurface::degree; ++i)
      for (int j = 0; i + j <= EDoFSurface::degree; ++j)
        design(Eigen::Index(k), EDoFSurface::slot(i, j)) =
            std::pow(c, i) * std::pow(r_over_lambda[k], j);
  }
  const Eigen::Map<const Eigen::VectorXd> y(values.data(), Eigen::Index(samples));

  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index col = 0; col < scale.size(); ++col) {
    if (!(scale(col) > 0))
      throw Error(ErrorKind::fitting, "surface fit basis column vanishes on the grid");
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  if (qr.rank() < EDoFSurface::term_count)
    throw Error(ErrorKind::fitting, "surface fit design matrix is rank deficient");
  const Eigen::VectorXd solution = qr.solve(y).cwiseQuotient(scale);

  EDoFSurface surface;
  std::copy(solution.data(), solution.data() + solution.size(), surface.coefficients.begin());
  const Eigen::VectorXd residual = y - design * solution;
  const double mean = y.mean();
  const double total = (y.array() - mean).square().sum();
  const double unexplained = residual.squaredNorm();
  surface.r_squared = total > 0 ? 1.0 - unexplained / total : (unexplained == 0 ? 1.0 : 0.0);
  surface.max_abs_residual = residual.cwiseAbs().maxCoeff();
  return surface;
}

EDoFSurface fit_edof_surface(const EDoFGrid& grid, double wavelength) {
  std::vector<double> thetas, ranges, values;
  for (std::size_t i = 0; i < grid.thetas.size(); ++i) {
    for (std::size_t j = 0; j < grid.radii.size(); ++j) {
      thetas.push_back(grid.thetas[i]);
      ranges.push_back(grid.radii[j] / wavelength);
      values.push_back(grid.direct(Eigen::Index(i), Eigen::Index(j)));
    }
  }
  return fit_edof_surface(thetas, ranges, values);
}

void write_edof_surface(std::ostream& out, const EDoFSurface& surface) {
  CsvWriter csv(out);
  csv.metadata("r_squared", format_number(surface.r_squared));
  csv.metadata("max_abs_residual", format_number(surface.max_abs_residual));
  csv.header({"i", "j", "p_ij"});
  for (int i = 0; i <= EDoFSurface::degree; ++i)
    for (int j = 0; i + j <= EDoFSurface::degree; ++j)
      csv.row({format_number(i), format_number(j), format_number(surface.at(i, j))});
}

EDoFSurface read_edof_surface(std::istream& in) {
  EDoFSurface surface;
  std::array<bool, EDoFSurface::term_count> seen{};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      if (key == "r_squared") surface.r_squared = std::stod(line.substr(colon + 1));
      if (key == "max_abs_residual") surface.max_abs_residual = std::stod(line.substr(colon + 1));
      continue;
    }
    if (!header_seen) {
      if (line != "i,j,p_ij") throw Error(ErrorKind::io, "unexpected surface file header");
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw Error(ErrorKind::io, "malformed surface row");
    const int i = std::stoi(fields[0]);
    const int j = std::stoi(fields[1]);
    if (i < 0 || j < 0 || i + j > EDoFSurface::degree)
      throw Error(ErrorKind::io, "surface term outside the degree-5 triangle");
    surface.at(i, j) = std::stod(fields[2]);
    seen[std::size_t(EDoFSurface::slot(i, j))] = true;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw Error(ErrorKind::io, "surface file is missing coefficients");
  return surface;
}

}  // namespace nfbeam
