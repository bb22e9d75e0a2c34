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

#include "qgem/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "qgem/parallel.hpp"
#include "qgem/pauli.hpp"
#include "qgem/state.hpp"

namespace qgem {

namespace {

constexpr double kMinTemperatureK = 0.05;
constexpr double kMaxTemperatureK = 10.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (;;) {
    const auto end = text.find(sep, begin);
    std::string part(text.substr(begin, end - begin));
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    parts.push_back(std::move(part));
    if (end == std::string_view::npos) return parts;
    begin = end + 1;
  }
}

std::string header_line(const RunConfig& config) {
  return "# " + config_to_json(config).dump() + "\n";
}

std::size_t to_index(std::size_t one_based) { return one_based - 1; }

DensityMatrix state_at(const SetupGeometry& setup, const PhysicalParams& params,
                       double gamma_hz, double tau_s) {
  return decohered_state(phase_table(setup, params), tau_s, gamma_hz);
}

SetupGeometry make_setup(const RunConfig& config) {
  return build_setup(config.setup.kind, config.setup.n, config.setup.levels,
                     config.setup.params);
}

double reference_tau(const RunConfig& config, double tau_s) {
  return config.ref_tau.value_or(tau_s);
}

}  // namespace

Grid Grid::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw ConfigError("grid '" + std::string(text) + "' is not start:stop:steps");
  }
  Grid g;
  g.start = parse_config_double("grid start", parts[0]);
  g.stop = parse_config_double("grid stop", parts[1]);
  g.steps = parse_config_count("grid steps", parts[2]);
  if (g.stop < g.start) {
    throw ConfigError("grid '" + std::string(text) + "': stop is below start");
  }
  return g;
}

std::vector<double> Grid::values() const {
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    v[i] = steps == 1 ? start
                      : start + (stop - start) * static_cast<double>(i) /
                                    static_cast<double>(steps - 1);
  }
  return v;
}

std::string Grid::to_string() const {
  return num(start) + ":" + num(stop) + ":" + std::to_string(steps);
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::kEntropySweep:
      return "entropy-sweep";
    case Command::kWitnessSweep:
      return "witness-sweep";
    case Command::kMeasure:
      return "measure";
    case Command::kDecoEstimate:
      return "deco-estimate";
    case Command::kGroupOps:
      return "group-ops";
  }
  return "";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::kEntropySweep, Command::kWitnessSweep, Command::kMeasure,
                 Command::kDecoEstimate, Command::kGroupOps}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

void apply_config_keys(const std::map<std::string, std::string>& kv, RunConfig& config) {
  static const std::set<std::string> kSetupKeys = {
      "kind", "setup", "n", "D", "d_levels", "m", "mass", "d_min", "delta_x", "tau", "G",
      "hbar"};
  config.setup = apply_setup_keys(kv, config.setup);
  for (const auto& [key, value] : kv) {
    if (kSetupKeys.contains(key)) continue;
    if (key == "subsystem") {
      config.subsystems.clear();
      for (const auto& s : split(value, ',')) {
        config.subsystems.push_back(parse_config_count(key, s));
      }
    } else if (key == "gamma") {
      config.gammas.clear();
      for (const auto& s : split(value, ',')) {
        config.gammas.push_back(parse_config_double(key, s));
      }
    } else if (key == "tau_grid") {
      config.tau_grid = Grid::parse(value);
    } else if (key == "shots") {
      config.shots = parse_config_count(key, value);
    } else if (key == "seeds") {
      config.seeds = parse_config_count(key, value);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_config_double(key, value));
    } else if (key == "mode") {
      config.modes.clear();
      for (const auto& s : split(value, ',')) config.modes.push_back(parse_plan_mode(s));
    } else if (key == "witness") {
      config.witness = parse_witness_source(value);
    } else if (key == "ref_gamma") {
      config.ref_gamma = parse_config_double(key, value);
    } else if (key == "ref_tau") {
      config.ref_tau = parse_config_double(key, value);
    } else if (key == "temp_grid") {
      config.temp_grid = Grid::parse(value);
    } else if (key == "target") {
      config.target = parse_config_double(key, value);
    } else if (key == "curve_points") {
      config.curve_points = parse_config_count(key, value);
    } else if (key == "threads") {
      config.threads = parse_config_count(key, value);
    } else if (key == "T_i") {
      config.env.temperature_int_k = parse_config_double(key, value);
    } else if (key == "number_density") {
      config.env.number_density_m3 = parse_config_double(key, value);
    } else if (key == "radius") {
      config.env.sphere_radius_m = parse_config_double(key, value);
    } else if (key == "gas_mass_u") {
      config.env.gas_mass_kg = parse_config_double(key, value) * constants::kAtomicMassUnit;
    } else if (key == "eps_re") {
      config.env.dielectric.real(parse_config_double(key, value));
    } else if (key == "eps_im") {
      config.env.dielectric.imag(parse_config_double(key, value));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void resolve(RunConfig& config) {
  auto& s = config.setup;
  s.params.validate();
  // Throws for unsupported (kind, n, D) combinations and overlapping arms.
  (void)make_setup(config);

  const bool pauli_command =
      config.command == Command::kMeasure || config.command == Command::kGroupOps;
  if (pauli_command && s.levels != 2) {
    throw ConfigError(std::string(to_string(config.command)) +
                      " needs qubits: Pauli decomposition requires D=2");
  }

  if (config.subsystems.empty()) {
    if (config.command == Command::kEntropySweep) {
      for (std::size_t i = 1; i <= s.n; ++i) config.subsystems.push_back(i);
    } else {
      config.subsystems.push_back(2);
    }
  }
  for (std::size_t sub : config.subsystems) {
    if (sub < 1 || sub > s.n) {
      throw ConfigError("subsystem " + std::to_string(sub) + " out of range 1.." +
                        std::to_string(s.n));
    }
  }
  if (config.gammas.empty()) config.gammas.push_back(0.0);
  for (double g : config.gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw ConfigError("gamma must be non-negative and finite");
    }
  }
  if (config.command == Command::kEntropySweep &&
      std::any_of(config.gammas.begin(), config.gammas.end(),
                  [](double g) { return g != 0.0; })) {
    throw ConfigError("entropy-sweep evaluates the pure state: gamma must be 0");
  }
  if (!config.tau_grid) {
    config.tau_grid = config.command == Command::kEntropySweep
                          ? Grid{0.0, 5.0, 51}
                          : Grid{s.params.tau_s, s.params.tau_s, 1};
  }
  if (config.tau_grid->start < 0.0) throw ConfigError("tau grid must be non-negative");
  if (config.ref_tau && !(*config.ref_tau >= 0.0)) {
    throw ConfigError("ref_tau must be non-negative");
  }
  if (!(config.ref_gamma >= 0.0)) throw ConfigError("ref_gamma must be non-negative");

  if (config.command == Command::kGroupOps) {
    if (config.gammas.size() != 1 || config.tau_grid->steps != 1 ||
        config.subsystems.size() != 1) {
      throw ConfigError("group-ops takes a single gamma, tau and subsystem");
    }
  }
  if (config.modes.empty()) config.modes.push_back(PlanMode::kUngrouped);
  if (config.seeds < 1) throw ConfigError("seeds must be >= 1");
  if (!(config.target > 0.0 && config.target < 1.0)) {
    throw ConfigError("target confidence must lie in (0, 1)");
  }
  if (config.curve_points < 2) throw ConfigError("curve_points must be >= 2");

  if (config.command == Command::kDecoEstimate) {
    if (!config.temp_grid) config.temp_grid = Grid{0.05, 5.0, 100};
    if (config.temp_grid->start < kMinTemperatureK ||
        config.temp_grid->stop > kMaxTemperatureK) {
      throw ConfigError("temperature grid must lie within [0.05, 10] K");
    }
  }
  config.env.delta_x_m = s.params.delta_x_m;
  config.env.validate();
}

nlohmann::json config_to_json(const RunConfig& config) {
  const auto& p = config.setup.params;
  nlohmann::json j;
  j["command"] = to_string(config.command);
  j["setup"] = {{"kind", to_string(config.setup.kind)},
                {"n", config.setup.n},
                {"D", config.setup.levels}};
  j["params"] = {{"mass_kg", p.mass_kg}, {"d_min_m", p.d_min_m},
                 {"delta_x_m", p.delta_x_m}, {"tau_s", p.tau_s},
                 {"G", p.G}, {"hbar", p.hbar}};
  j["subsystems"] = config.subsystems;
  j["gammas_hz"] = config.gammas;
  if (config.tau_grid) j["tau_grid"] = config.tau_grid->to_string();
  j["seed"] = config.seed;
  if (config.command == Command::kMeasure) {
    j["seeds"] = config.seeds;
    j["shots"] = config.shots;
    j["target"] = config.target;
    j["curve_points"] = config.curve_points;
    nlohmann::json modes = nlohmann::json::array();
    for (auto m : config.modes) modes.push_back(to_string(m));
    j["modes"] = modes;
  }
  j["witness"] = to_string(config.witness);
  if (config.witness == WitnessSource::kFixed) {
    j["ref_gamma_hz"] = config.ref_gamma;
    j["ref_tau_s"] = config.ref_tau ? nlohmann::json(*config.ref_tau)
                                    : nlohmann::json("same as tau");
  }
  if (config.command == Command::kDecoEstimate) {
    const auto& e = config.env;
    if (config.temp_grid) j["temp_grid"] = config.temp_grid->to_string();
    j["env"] = {{"T_i_K", e.temperature_int_k},
                {"number_density_m3", e.number_density_m3},
                {"sphere_radius_m", e.sphere_radius_m},
                {"gas_mass_kg", e.gas_mass_kg},
                {"dielectric_re", e.dielectric.real()},
                {"dielectric_im", e.dielectric.imag()},
                {"delta_x_m", e.delta_x_m}};
  }
  return j;
}

CommandOutput cmd_entropy_sweep(const RunConfig& config) {
  const auto setup = make_setup(config);
  const auto table = phase_table(setup, config.setup.params);
  const auto taus = config.tau_grid->values();
  const auto& subs = config.subsystems;

  std::vector<double> entropy(taus.size() * subs.size());
  parallel_for(taus.size(), config.threads, [&](std::size_t t) {
    const auto rho = decohered_state(table, taus[t], 0.0);
    for (std::size_t k = 0; k < subs.size(); ++k) {
      const std::size_t keep[] = {to_index(subs[k])};
      entropy[t * subs.size() + k] = entanglement_entropy(rho, keep);
    }
  });

  std::ostringstream os;
  os << header_line(config) << "setup,n,subsystem,tau_s,entropy_bits\n";
  for (std::size_t k = 0; k < subs.size(); ++k) {
    for (std::size_t t = 0; t < taus.size(); ++t) {
      os << to_string(setup.kind) << ',' << setup.n << ',' << subs[k] << ','
         << num(taus[t]) << ',' << num(entropy[t * subs.size() + k]) << '\n';
    }
  }
  return {os.str(), {}};
}

CommandOutput cmd_witness_sweep(const RunConfig& config) {
  const auto setup = make_setup(config);
  const auto& params = config.setup.params;
  const auto table = phase_table(setup, params);
  const auto taus = config.tau_grid->values();
  const auto& subs = config.subsystems;
  const auto& gammas = config.gammas;

  const std::size_t per_gamma = taus.size() * subs.size();
  std::vector<double> value(gammas.size() * per_gamma);
  parallel_for(gammas.size() * taus.size(), config.threads, [&](std::size_t point) {
    const std::size_t g = point / taus.size();
    const std::size_t t = point % taus.size();
    const auto rho = decohered_state(table, taus[t], gammas[g]);
    for (std::size_t k = 0; k < subs.size(); ++k) {
      const std::size_t sub = to_index(subs[k]);
      double w = 0.0;
      if (config.witness == WitnessSource::kSelf) {
        w = witness_expectation(build_witness(rho, sub), rho);
      } else {
        const auto ref = decohered_state(table, reference_tau(config, taus[t]),
                                         config.ref_gamma);
        w = witness_expectation(build_witness(ref, sub, WitnessSource::kFixed), rho);
      }
      value[g * per_gamma + k * taus.size() + t] = w;
    }
  });

  std::ostringstream os;
  os << header_line(config) << "setup,n,D,subsystem,gamma_hz,tau_s,witness_value\n";
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    for (std::size_t k = 0; k < subs.size(); ++k) {
      for (std::size_t t = 0; t < taus.size(); ++t) {
        os << to_string(setup.kind) << ',' << setup.n << ',' << setup.levels << ','
           << subs[k] << ',' << num(gammas[g]) << ',' << num(taus[t]) << ','
           << num(value[g * per_gamma + k * taus.size() + t]) << '\n';
      }
    }
  }
  return {os.str(), {}};
}

CommandOutput cmd_measure(const RunConfig& config) {
  const auto setup = make_setup(config);
  const auto& params = config.setup.params;
  const auto table = phase_table(setup, params);
  const auto taus = config.tau_grid->values();
  const std::size_t sub = to_index(config.subsystems.front());

  MinShotsOptions base_options;
  base_options.target = config.target;
  base_options.threads = config.threads;
  base_options.seeds.clear();
  for (std::size_t i = 0; i < config.seeds; ++i) base_options.seeds.push_back(config.seed + i);

  std::ostringstream os;
  os << header_line(config)
     << "n,D,setup,gamma_hz,tau_s,mode,total_shots,witness_mean,stderr,t,confidence,seed,"
        "row_type\n";
  auto row = [&](double gamma, double tau, PlanMode mode, const ConfidenceReport& r,
                 std::uint64_t seed, std::string_view type) {
    os << setup.n << ',' << setup.levels << ',' << to_string(setup.kind) << ','
       << num(gamma) << ',' << num(tau) << ',' << to_string(mode) << ',' << r.total_shots
       << ',' << num(r.witness_mean) << ',' << num(r.stderr_w) << ',' << num(r.t_value)
       << ',' << num(r.confidence) << ',' << seed << ',' << type << '\n';
  };

  for (double gamma : config.gammas) {
    for (double tau : taus) {
      std::optional<DensityMatrix> reference;
      if (config.witness == WitnessSource::kFixed) {
        reference = decohered_state(table, reference_tau(config, tau), config.ref_gamma);
      }
      const auto experiment = prepare_experiment(setup, params, sub, gamma, tau,
                                                 reference ? &*reference : nullptr);
      if (!(experiment.exact_value < 0.0)) {
        throw NotCertifiableError("witness expectation " + num(experiment.exact_value) +
                                  " at gamma=" + num(gamma) + " Hz, tau=" + num(tau) +
                                  " s is non-negative: entanglement is not certifiable");
      }
      for (PlanMode mode : config.modes) {
        MinShotsOptions options = base_options;
        options.mode = mode;
        const auto result = min_shots_for_confidence(experiment, options);

        const std::size_t lo = 2 * experiment.units(mode);
        const std::size_t hi =
            std::max(lo + 1, config.shots > 0 ? config.shots : 4 * result.median_shots);
        std::vector<std::size_t> budgets;
        const double ratio = std::pow(static_cast<double>(hi) / static_cast<double>(lo),
                                      1.0 / static_cast<double>(config.curve_points - 1));
        for (std::size_t k = 0; k < config.curve_points; ++k) {
          const auto b = static_cast<std::size_t>(
              std::llround(static_cast<double>(lo) * std::pow(ratio, static_cast<double>(k))));
          if (budgets.empty() || b > budgets.back()) budgets.push_back(b);
        }
        std::vector<ConfidenceReport> curve(budgets.size());
        std::vector<std::uint64_t> seeds(budgets.size());
        const MeasurementPlan* plan = mode == PlanMode::kGrouped ? &experiment.plan : nullptr;
        parallel_for(budgets.size(), config.threads, [&](std::size_t k) {
          seeds[k] = derive_seed(config.seed, k);
          const auto record = run_measurements(experiment.rho, experiment.decomposition,
                                               plan, budgets[k], seeds[k]);
          curve[k] = estimate_witness(experiment.decomposition, record);
        });
        for (std::size_t k = 0; k < budgets.size(); ++k) {
          row(gamma, tau, mode, curve[k], seeds[k], "curve");
        }
        row(gamma, tau, mode, expected_report(experiment, mode, result.median_shots),
            config.seed, "summary");
      }
    }
  }
  return {os.str(), {}};
}

CommandOutput cmd_deco_estimate(const RunConfig& config) {
  const auto temps = config.temp_grid->values();
  std::vector<DecoherenceBreakdown> rows(temps.size());
  parallel_for(temps.size(), config.threads, [&](std::size_t i) {
    EnvironmentParams env = config.env;
    env.temperature_env_k = temps[i];
    rows[i] = gamma_total(env);
  });

  CommandOutput out;
  std::ostringstream os;
  os << header_line(config)
     << "T_e_K,lambda_air,gamma_air_hz,lambda_s,lambda_e,lambda_a,gamma_bb_hz,"
        "gamma_total_hz\n";
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const auto& d = rows[i];
    os << num(temps[i]) << ',' << num(d.air.lambda_air) << ',' << num(d.air.gamma_hz) << ','
       << num(d.blackbody.lambda_s) << ',' << num(d.blackbody.lambda_e) << ','
       << num(d.blackbody.lambda_a) << ',' << num(d.gamma_bb_hz) << ','
       << num(d.gamma_total_hz) << '\n';
    for (const auto& w : d.warnings) {
      out.warnings.push_back("T_e=" + num(temps[i]) + " K: " + w.code + ": " + w.message);
    }
  }
  out.text = os.str();
  return out;
}

CommandOutput cmd_group_ops(const RunConfig& config) {
  const auto setup = make_setup(config);
  const auto& params = config.setup.params;
  const double gamma = config.gammas.front();
  const double tau = config.tau_grid->start;
  const std::size_t sub = to_index(config.subsystems.front());

  std::optional<DensityMatrix> reference;
  if (config.witness == WitnessSource::kFixed) {
    reference = state_at(setup, params, config.ref_gamma, reference_tau(config, tau));
  }
  const auto experiment =
      prepare_experiment(setup, params, sub, gamma, tau, reference ? &*reference : nullptr);
  nlohmann::json j = plan_to_json(experiment.decomposition, experiment.plan);
  j["config"] = config_to_json(config);
  j["witness_value"] = experiment.exact_value;
  return {j.dump(2) + "\n", {}};
}

int run_command(RunConfig config, std::ostream& err) {
  try {
    resolve(config);
    CommandOutput out;
    switch (config.command) {
      case Command::kEntropySweep:
        out = cmd_entropy_sweep(config);
        break;
      case Command::kWitnessSweep:
        out = cmd_witness_sweep(config);
        break;
      case Command::kMeasure:
        out = cmd_measure(config);
        break;
      case Command::kDecoEstimate:
        out = cmd_deco_estimate(config);
        break;
      case Command::kGroupOps:
        out = cmd_group_ops(config);
        break;
    }
    for (const auto& w : out.warnings) err << "warning: " << w << '\n';
    if (config.out.empty() || config.out == "-") {
      std::cout << out.text << std::flush;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      file << out.text;
      if (!file) {
        err << "error: cannot write '" << config.out << "'\n";
        return kExitFailure;
      }
    }
    return kExitOk;
  } catch (const NotCertifiableError& e) {
    err << "error: not certifiable: " << e.what() << '\n';
    return kExitNotCertifiable;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qgem
