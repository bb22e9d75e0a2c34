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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qgem/decoherence_rate.hpp"
#include "qgem/entanglement.hpp"
#include "qgem/experiment.hpp"
#include "qgem/geometry.hpp"

namespace qgem {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNotCertifiable = 3;

/// Inclusive linear grid written `start:stop:steps`.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  static Grid parse(std::string_view text);
  std::vector<double> values() const;
  std::string to_string() const;
};

enum class Command { kEntropySweep, kWitnessSweep, kMeasure, kDecoEstimate, kGroupOps };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);

/// Fully described run. Particle indices in `subsystems` are 1-based, as on
/// the command line; empty optional fields take per-command defaults in
/// resolve().
struct RunConfig {
  Command command = Command::kWitnessSweep;
  SetupConfig setup;
  std::vector<std::size_t> subsystems;
  std::vector<double> gammas;
  std::optional<Grid> tau_grid;
  /// measure: largest budget on the confidence curve; 0 picks 4x the median.
  std::size_t shots = 0;
  std::size_t seeds = 11;
  std::uint64_t seed = 1;
  std::vector<PlanMode> modes;
  WitnessSource witness = WitnessSource::kSelf;
  /// Reference point of a fixed witness; tau defaults to the evaluated tau.
  double ref_gamma = 0.0;
  std::optional<double> ref_tau;
  std::optional<Grid> temp_grid;
  EnvironmentParams env;
  double target = 0.999;
  std::size_t curve_points = 24;
  std::size_t threads = 0;
  /// Empty or "-" writes to stdout.
  std::string out;
};

/// Applies `key = value` pairs from a config file. Throws ConfigError on
/// unknown keys or malformed values.
void apply_config_keys(const std::map<std::string, std::string>& kv, RunConfig& config);

/// Fills per-command defaults and checks every parameter combination. Throws
/// ConfigError (or UnsupportedSetupError) naming the violated constraint.
void resolve(RunConfig& config);

/// Resolved configuration, embedded in every output header.
nlohmann::json config_to_json(const RunConfig& config);

/// A non-fatal remark produced while running (regime-validity warnings).
struct CommandOutput {
  std::string text;
  std::vector<std::string> warnings;
};

/// Each command expects a resolved config and returns the full file text.
CommandOutput cmd_entropy_sweep(const RunConfig& config);
CommandOutput cmd_witness_sweep(const RunConfig& config);
/// Throws NotCertifiableError when any requested point has a non-negative
/// witness expectation.
CommandOutput cmd_measure(const RunConfig& config);
CommandOutput cmd_deco_estimate(const RunConfig& config);
CommandOutput cmd_group_ops(const RunConfig& config);

/// Resolves, dispatches, writes the output and maps failures to exit codes.
/// Diagnostics go to `err`.
int run_command(RunConfig config, std::ostream& err);

}  // namespace qgem
