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

#include "qgem/geometry.hpp"

#include <cmath>
#include <istream>
#include <numbers>

#include "qgem/linalg.hpp"

namespace qgem {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string_view to_string(SetupKind kind) {
  switch (kind) {
    case SetupKind::kParallel:
      return "parallel";
    case SetupKind::kLinear:
      return "linear";
    case SetupKind::kStar:
      return "star";
  }
  return "unknown";
}

SetupKind parse_setup_kind(std::string_view name) {
  if (name == "parallel") return SetupKind::kParallel;
  if (name == "linear") return SetupKind::kLinear;
  if (name == "star") return SetupKind::kStar;
  throw ConfigError("unknown setup '" + std::string(name) +
                    "' (expected parallel, linear or star)");
}

void PhysicalParams::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(name) + " must be strictly positive");
    }
  };
  positive(mass_kg, "mass");
  positive(d_min_m, "d_min");
  positive(delta_x_m, "delta_x");
  positive(tau_s, "tau");
  positive(G, "G");
  positive(hbar, "hbar");
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::size_t SetupGeometry::hilbert_dim() const {
  const auto d = dims();
  return qgem::hilbert_dim(d);
}

SetupGeometry build_setup(SetupKind kind, std::size_t n, std::size_t levels,
                          const PhysicalParams& params) {
  params.validate();
  if (levels < 2) {
    throw UnsupportedSetupError("each particle needs at least 2 arms (got D=" +
                                std::to_string(levels) + ")");
  }
  if (kind == SetupKind::kStar && (n != 3 || levels != 2)) {
    throw UnsupportedSetupError(
        "star setup requires n=3 and D=2 (got n=" + std::to_string(n) +
        ", D=" + std::to_string(levels) + ")");
  }
  if (n < 2 || n > 3) {
    throw UnsupportedSetupError(std::string(to_string(kind)) +
                                " setup requires n=2 or n=3 (got n=" +
                                std::to_string(n) + ")");
  }

  SetupGeometry setup;
  setup.kind = kind;
  setup.n = n;
  setup.levels = levels;
  (void)setup.hilbert_dim();  // rejects D^n beyond the dimension limit
  setup.positions.assign(n, std::vector<Point2>(levels));

  const double dx = params.delta_x_m;
  const double arm_step = dx / static_cast<double>(levels - 1);
  switch (kind) {
    case SetupKind::kParallel: {
      setup.base_separation_m = params.d_min_m;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < levels; ++j) {
          setup.positions[i][j] = {static_cast<double>(i) * params.d_min_m,
                                   static_cast<double>(j) * arm_step};
        }
      }
      break;
    }
    case SetupKind::kLinear: {
      const double d = params.d_min_m + dx;
      setup.base_separation_m = d;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < levels; ++j) {
          setup.positions[i][j] = {
              static_cast<double>(i) * d + static_cast<double>(j) * arm_step, 0.0};
        }
      }
      break;
    }
    case SetupKind::kStar: {
      const double d = params.d_min_m;
      setup.base_separation_m = d;
      const double inner_radius = d / std::numbers::sqrt3;
      for (std::size_t i = 0; i < 3; ++i) {
        const double angle =
            std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(i) / 3.0;
        const double ux = std::cos(angle);
        const double uy = std::sin(angle);
        setup.positions[i][0] = {inner_radius * ux, inner_radius * uy};
        setup.positions[i][1] = {(inner_radius + dx) * ux, (inner_radius + dx) * uy};
      }
      break;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t a = 0; a < levels; ++a) {
        for (std::size_t b = 0; b < levels; ++b) {
          if (distance(setup.positions[i][a], setup.positions[k][b]) <
              params.d_min_m - 1e-12) {
            throw UnsupportedSetupError(
                "layout violates the minimal separation d_min");
          }
        }
      }
    }
  }
  return setup;
}

double branch_distance(const SetupGeometry& setup, std::size_t i,
                       std::size_t arm_i, std::size_t k, std::size_t arm_k) {
  if (i == k) throw std::invalid_argument("branch_distance: i and k must differ");
  if (i >= setup.n || k >= setup.n) {
    throw std::out_of_range("branch_distance: particle index out of range");
  }
  if (arm_i >= setup.levels || arm_k >= setup.levels) {
    throw std::out_of_range("branch_distance: arm index out of range");
  }
  return distance(setup.positions[i][arm_i], setup.positions[k][arm_k]);
}

std::vector<std::size_t> branch_digits(std::size_t index, std::size_t n,
                                       std::size_t levels) {
  std::vector<std::size_t> digits(n);
  for (std::size_t p = n; p-- > 0;) {
    digits[p] = index % levels;
    index /= levels;
  }
  return digits;
}

std::size_t branch_index(std::span<const std::size_t> digits, std::size_t levels) {
  std::size_t index = 0;
  for (std::size_t d : digits) index = index * levels + d;
  return index;
}

double BranchPhaseTable::rate(std::span<const std::size_t> digits) const {
  if (digits.size() != n) {
    throw std::invalid_argument("BranchPhaseTable::rate: wrong branch length");
  }
  return rates.at(branch_index(digits, levels));
}

BranchPhaseTable phase_table(const SetupGeometry& setup,
                             const PhysicalParams& params) {
  params.validate();
  BranchPhaseTable table;
  table.n = setup.n;
  table.levels = setup.levels;
  const std::size_t dim = setup.hilbert_dim();
  table.rates.resize(dim);
  const double coupling = params.G * params.mass_kg * params.mass_kg / params.hbar;
  for (std::size_t b = 0; b < dim; ++b) {
    const auto digits = branch_digits(b, setup.n, setup.levels);
    double sum = 0.0;
    for (std::size_t i = 0; i < setup.n; ++i) {
      for (std::size_t k = i + 1; k < setup.n; ++k) {
        sum += 1.0 / branch_distance(setup, i, digits[i], k, digits[k]);
      }
    }
    table.rates[b] = coupling * sum;
  }
  return table;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    kv[std::move(key)] = std::move(value);
  }
  return kv;
}

double parse_config_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + value +
                      "' is not a number");
  }
}

std::size_t parse_config_count(const std::string& key, const std::string& value) {
  const double x = parse_config_double(key, value);
  if (x < 1 || std::floor(x) != x) {
    throw ConfigError("config key '" + key + "': '" + value +
                      "' is not a positive integer");
  }
  return static_cast<std::size_t>(x);
}

SetupConfig apply_setup_keys(const std::map<std::string, std::string>& kv,
                             SetupConfig base) {
  for (const auto& [key, value] : kv) {
    if (key == "kind" || key == "setup") {
      base.kind = parse_setup_kind(value);
    } else if (key == "n") {
      base.n = parse_config_count(key, value);
    } else if (key == "D" || key == "d_levels") {
      base.levels = parse_config_count(key, value);
    } else if (key == "m" || key == "mass") {
      base.params.mass_kg = parse_config_double(key, value);
    } else if (key == "d_min") {
      base.params.d_min_m = parse_config_double(key, value);
    } else if (key == "delta_x") {
      base.params.delta_x_m = parse_config_double(key, value);
    } else if (key == "tau") {
      base.params.tau_s = parse_config_double(key, value);
    } else if (key == "G") {
      base.params.G = parse_config_double(key, value);
    } else if (key == "hbar") {
      base.params.hbar = parse_config_double(key, value);
    }
  }
  base.params.validate();
  return base;
}

}  // namespace qgem
