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
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgem {

class UnsupportedSetupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SetupKind { kParallel, kLinear, kStar };

std::string_view to_string(SetupKind kind);
/// Accepts "parallel", "linear" or "star".
SetupKind parse_setup_kind(std::string_view name);

/// Physical constants and experiment scales, SI units throughout.
struct PhysicalParams {
  double mass_kg = 1e-14;
  double d_min_m = 200e-6;
  double delta_x_m = 250e-6;
  double tau_s = 2.5;
  double G = 6.674e-11;
  double hbar = 1.054571817e-34;

  /// Throws ConfigError unless every field is strictly positive.
  void validate() const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point2 a, Point2 b);

/// Arm positions of every particle for one of the named layouts.
struct SetupGeometry {
  SetupKind kind = SetupKind::kParallel;
  std::size_t n = 2;
  std::size_t levels = 2;
  /// positions[particle][arm]
  std::vector<std::vector<Point2>> positions;
  /// Arm-0 to arm-0 spacing of neighbouring particles (inner-triangle edge
  /// for the star layout).
  double base_separation_m = 0.0;

  std::size_t hilbert_dim() const;
  std::vector<std::size_t> dims() const { return std::vector<std::size_t>(n, levels); }
};

/// Lays out the arms:
///  - parallel: particles on the x axis spaced d = d_min, the D arms of each
///    spread evenly over [0, delta_x] along y;
///  - linear: arms along the separation axis, d = d_min + delta_x;
///  - star: equilateral inner triangle of edge d = d_min with each particle's
///    second arm pushed radially outward by delta_x (n = 3, D = 2 only).
SetupGeometry build_setup(SetupKind kind, std::size_t n, std::size_t levels,
                          const PhysicalParams& params = {});

/// Distance between arm `arm_i` of particle `i` and arm `arm_k` of particle `k`.
double branch_distance(const SetupGeometry& setup, std::size_t i,
                       std::size_t arm_i, std::size_t k, std::size_t arm_k);

/// Branch digits of a basis index, particle 1 first.
std::vector<std::size_t> branch_digits(std::size_t index, std::size_t n,
                                       std::size_t levels);
std::size_t branch_index(std::span<const std::size_t> digits, std::size_t levels);

/// Gravitational phase rate (rad/s) of every joint branch, indexed by basis
/// index.
struct BranchPhaseTable {
  std::size_t n = 0;
  std::size_t levels = 0;
  std::vector<double> rates;

  double rate(std::span<const std::size_t> digits) const;
};

BranchPhaseTable phase_table(const SetupGeometry& setup,
                             const PhysicalParams& params = {});

/// Setup description read from a plain-text `key = value` file.
struct SetupConfig {
  SetupKind kind = SetupKind::kParallel;
  std::size_t n = 3;
  std::size_t levels = 2;
  PhysicalParams params;
};

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Strict number parse of a config value; throws ConfigError naming `key`.
double parse_config_double(const std::string& key, const std::string& value);
/// As parse_config_double, additionally requiring a positive integer.
std::size_t parse_config_count(const std::string& key, const std::string& value);

/// Recognised keys: kind, n, D, m, d_min, delta_x, tau, G, hbar. Unknown keys
/// are left for the caller.
SetupConfig apply_setup_keys(const std::map<std::string, std::string>& kv,
                             SetupConfig base = {});

}  // namespace qgem
