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

// Experiment runner:
//   nfbeam <experiment> [--config FILE] --out DIR [--threads N] [--seed S]
//   nfbeam list
//   nfbeam rerun CSV --out DIR [--threads N]

#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nfbeam/config_io.hpp"
#include "nfbeam/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Near-field beamfocusing experiments for sparse planar arrays"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned threads = 1;
  long long seed = 0;

  for (const auto& info : nfbeam::experiment_catalog()) {
    auto* sub = app.add_subcommand(info.name, info.description + " (" + info.figures + ")");
    sub->add_option("--config", config_path, "JSON config file; missing keys take defaults")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--threads", threads, "worker threads; 0 uses all cores");
    sub->add_option("--seed", seed, "accepted and ignored; every experiment is deterministic");
  }
  auto* list = app.add_subcommand("list", "print experiment names and the figures they regenerate");
  std::string rerun_csv;
  auto* rerun = app.add_subcommand("rerun", "re-run an experiment from the metadata of its CSV");
  rerun->add_option("csv", rerun_csv, "CSV written by an earlier run")->required()->check(CLI::ExistingFile);
  rerun->add_option("--out", out_dir, "output directory")->required();
  rerun->add_option("--threads", threads, "worker threads; 0 uses all cores");

  // An unrecognized first word names an experiment we do not have.
  if (argc > 1 && argv[1][0] != '-') {
    const std::string word = argv[1];
    const auto& catalog = nfbeam::experiment_catalog();
    const bool known = word == "list" || word == "rerun" ||
                       std::any_of(catalog.begin(), catalog.end(),
                                   [&](const auto& info) { return info.name == word; });
    if (!known) {
      const nfbeam::Error error(nfbeam::ErrorKind::unknown_experiment,
                                "unknown experiment '" + word + "'");
      std::cerr << nfbeam::error_line(error) << '\n';
      return nfbeam::exit_unknown_experiment;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? nfbeam::exit_ok : nfbeam::exit_usage;
  }

  if (list->parsed()) {
    for (const auto& info : nfbeam::experiment_catalog())
      std::cout << info.name << '\t' << info.figures << '\t' << info.description << '\n';
    return nfbeam::exit_ok;
  }

  try {
    nfbeam::ExperimentSpec spec;
    if (rerun->parsed()) {
      spec = nfbeam::spec_from_output(rerun_csv, out_dir);
    } else {
      spec.name = app.get_subcommands().front()->get_name();
      spec.out_dir = out_dir;
      if (!config_path.empty()) spec.config = nfbeam::load_json_file(config_path);
    }
    spec.threads = threads;
    for (const auto& path : nfbeam::run_experiment(spec)) std::cout << path.string() << '\n';
    return nfbeam::exit_ok;
  } catch (const nfbeam::Error& e) {
    std::cerr << nfbeam::error_line(e) << '\n';
    return nfbeam::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << nfbeam::error_line(nfbeam::Error(nfbeam::ErrorKind::numeric, e.what())) << '\n';
    return nfbeam::exit_numeric;
  }
}
