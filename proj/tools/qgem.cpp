// Copyright 2026 The qgemsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgem/commands.hpp"

namespace {

// Raw flag values; only flags the user actually passed override the config.
struct Flags {
  std::string config_path;
  std::string setup;
  std::size_t n = 0;
  std::size_t d_levels = 0;
  std::vector<std::size_t> subsystems;
  std::vector<double> gammas;
  std::string tau_grid;
  std::size_t shots = 0;
  std::size_t seeds = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> modes;
  std::string witness;
  double ref_gamma = 0.0;
  double ref_tau = 0.0;
  std::string temp_grid;
  std::size_t threads = 0;
  std::string out;
};

struct Handles {
  CLI::Option* setup;
  CLI::Option* n;
  CLI::Option* d_levels;
  CLI::Option* subsystem;
  CLI::Option* gamma;
  CLI::Option* tau_grid;
  CLI::Option* shots;
  CLI::Option* seeds;
  CLI::Option* seed;
  CLI::Option* mode;
  CLI::Option* witness;
  CLI::Option* ref_gamma;
  CLI::Option* ref_tau;
  CLI::Option* temp_grid;
  CLI::Option* threads;
  CLI::Option* out;
  CLI::Option* config;
};

Handles add_flags(CLI::App& cmd, Flags& f) {
  Handles h{};
  h.setup = cmd.add_option("--setup", f.setup, "parallel | linear | star");
  h.n = cmd.add_option("--n", f.n, "number of particles (2 or 3)");
  h.d_levels = cmd.add_option("--d-levels", f.d_levels, "superposition arms per particle");
  h.subsystem = cmd.add_option("--subsystem", f.subsystems,
                               "1-based particle index (repeatable)")
                    ->delimiter(',');
  h.gamma = cmd.add_option("--gamma", f.gammas, "decoherence rate in Hz (repeatable)")
                ->delimiter(',');
  h.tau_grid = cmd.add_option("--tau-grid", f.tau_grid, "start:stop:steps in seconds");
  h.shots = cmd.add_option("--shots", f.shots, "largest budget on the confidence curve");
  h.seeds = cmd.add_option("--seeds", f.seeds, "number of seeds for the median");
  h.seed = cmd.add_option("--seed", f.seed, "base RNG seed");
  h.mode = cmd.add_option("--mode", f.modes, "grouped | ungrouped (repeatable)")
               ->delimiter(',');
  h.witness = cmd.add_option("--witness", f.witness, "self | fixed");
  h.ref_gamma = cmd.add_option("--ref-gamma", f.ref_gamma, "gamma of the fixed witness");
  h.ref_tau = cmd.add_option("--ref-tau", f.ref_tau, "tau of the fixed witness");
  h.temp_grid = cmd.add_option("--temp-grid", f.temp_grid, "start:stop:steps in kelvin");
  h.threads = cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)");
  h.out = cmd.add_option("--out", f.out, "output path (default stdout)");
  h.config = cmd.add_option("--config", f.config_path, "key = value config file");
  return h;
}

qgem::RunConfig build_config(qgem::Command command, const Flags& f, const Handles& h) {
  qgem::RunConfig c;
  c.command = command;
  if (h.config->count() > 0) {
    std::ifstream in(f.config_path);
    if (!in) throw qgem::ConfigError("cannot read config file '" + f.config_path + "'");
    qgem::apply_config_keys(qgem::parse_key_values(in), c);
  }
  if (h.setup->count() > 0) c.setup.kind = qgem::parse_setup_kind(f.setup);
  if (h.n->count() > 0) c.setup.n = f.n;
  if (h.d_levels->count() > 0) c.setup.levels = f.d_levels;
  if (h.subsystem->count() > 0) c.subsystems = f.subsystems;
  if (h.gamma->count() > 0) c.gammas = f.gammas;
  if (h.tau_grid->count() > 0) c.tau_grid = qgem::Grid::parse(f.tau_grid);
  if (h.shots->count() > 0) c.shots = f.shots;
  if (h.seeds->count() > 0) c.seeds = f.seeds;
  if (h.seed->count() > 0) c.seed = f.seed;
  if (h.mode->count() > 0) {
    c.modes.clear();
    for (const auto& m : f.modes) c.modes.push_back(qgem::parse_plan_mode(m));
  }
  if (h.witness->count() > 0) c.witness = qgem::parse_witness_source(f.witness);
  if (h.ref_gamma->count() > 0) c.ref_gamma = f.ref_gamma;
  if (h.ref_tau->count() > 0) c.ref_tau = f.ref_tau;
  if (h.temp_grid->count() > 0) c.temp_grid = qgem::Grid::parse(f.temp_grid);
  if (h.threads->count() > 0) c.threads = f.threads;
  if (h.out->count() > 0) c.out = f.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gravitationally induced entanglement simulator"};
  app.require_subcommand(1);

  const std::vector<std::pair<qgem::Command, std::string>> commands = {
      {qgem::Command::kEntropySweep, "single-particle entanglement entropy over a tau grid"},
      {qgem::Command::kWitnessSweep, "PPT witness value over gamma and tau grids"},
      {qgem::Command::kMeasure, "simulated measurements and minimal shot counts"},
      {qgem::Command::kDecoEstimate, "decoherence rate over an environment temperature grid"},
      {qgem::Command::kGroupOps, "Pauli decomposition and qubit-wise commuting groups"},
  };
  std::vector<Flags> flags(commands.size());
  std::vector<Handles> handles;
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* sub = app.add_subcommand(std::string(qgem::to_string(commands[i].first)),
                                   commands[i].second);
    handles.push_back(add_flags(*sub, flags[i]));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qgem::kExitInvalidConfig;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    qgem::RunConfig config;
    try {
      config = build_config(commands[i].first, flags[i], handles[i]);
    } catch (const std::exception& e) {
      std::cerr << "error: invalid config: " << e.what() << '\n';
      return qgem::kExitInvalidConfig;
    }
    return qgem::run_command(std::move(config), std::cerr);
  }
  return qgem::kExitInvalidConfig;
}
