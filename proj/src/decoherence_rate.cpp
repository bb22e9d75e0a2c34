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

#include "qgem/decoherence_rate.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qgem/geometry.hpp"

namespace qgem {

namespace {

using namespace constants;

// (epsilon - 1) / (epsilon + 2)
std::complex<double> clausius_mossotti(std::complex<double> eps) {
  return (eps - 1.0) / (eps + 2.0);
}

std::string format_length(double metres) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g m", metres);
  return buf;
}

}  // namespace

void EnvironmentParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(name) + " must be positive and finite");
    }
  };
  positive(temperature_env_k, "T_e");
  positive(temperature_int_k, "T_i");
  positive(number_density_m3, "number density");
  positive(sphere_radius_m, "sphere radius");
  positive(gas_mass_kg, "gas particle mass");
  if (!(delta_x_m >= 0.0) || !std::isfinite(delta_x_m)) {
    throw ConfigError("delta_x must be non-negative and finite");
  }
  if (!(dielectric.imag() >= 0.0)) {
    throw ConfigError("Im(dielectric constant) must be non-negative");
  }
}

double thermal_wavelength_air(const EnvironmentParams& env) {
  env.validate();
  return kPlanck / std::sqrt(2.0 * std::numbers::pi * env.gas_mass_kg * kBoltzmann *
                             env.temperature_env_k);
}

double lambda_air(const EnvironmentParams& env) {
  env.validate();
  const double a = env.sphere_radius_m;
  return 8.0 / (3.0 * kHbar * kHbar) * env.number_density_m3 * a * a *
         std::sqrt(2.0 * std::numbers::pi * env.gas_mass_kg) *
         std::pow(kBoltzmann * env.temperature_env_k, 1.5);
}

AirRate gamma_air(const EnvironmentParams& env) {
  AirRate r;
  r.wavelength_m = thermal_wavelength_air(env);
  r.lambda_air = lambda_air(env);
  r.gamma_hz = r.wavelength_m * r.wavelength_m * r.lambda_air;
  if (r.wavelength_m > env.delta_x_m / 10.0) {
    r.warnings.push_back(
        {"air_wavelength_not_short",
         "thermal gas wavelength " + format_length(r.wavelength_m) +
             " exceeds delta_x/10; the short-wavelength limit is not valid"});
  }
  return r;
}

double thermal_wavelength_photon(const EnvironmentParams& env) {
  env.validate();
  return kPlanck * kSpeedOfLight / (kBoltzmann * env.temperature_env_k);
}

BlackbodyRate lambda_blackbody(const EnvironmentParams& env) {
  env.validate();
  const auto f = clausius_mossotti(env.dielectric);
  const double a = env.sphere_radius_m;
  const double a3 = a * a * a;
  const double inv_len_e = kBoltzmann * env.temperature_env_k / (kHbar * kSpeedOfLight);
  const double inv_len_i = kBoltzmann * env.temperature_int_k / (kHbar * kSpeedOfLight);
  const double pi = std::numbers::pi;

  BlackbodyRate r;
  r.lambda_s = 40320.0 * (8.0 / (9.0 * pi)) * a3 * a3 * kSpeedOfLight * f.real() *
               f.real() * std::pow(inv_len_e, 9) * kZeta9;
  const double absorb = 16.0 * std::pow(pi, 5) / 189.0 * a3 * kSpeedOfLight * f.imag();
  r.lambda_e = absorb * std::pow(inv_len_i, 6);
  r.lambda_a = absorb * std::pow(inv_len_e, 6);
  r.lambda_bb = r.lambda_s + r.lambda_e + r.lambda_a;
  r.wavelength_m = thermal_wavelength_photon(env);
  if (r.wavelength_m < 10.0 * env.delta_x_m) {
    r.warnings.push_back(
        {"photon_wavelength_not_long",
         "thermal photon wavelength " + format_length(r.wavelength_m) +
             " is below 10*delta_x; the long-wavelength limit is not valid"});
  }
  return r;
}

DecoherenceBreakdown gamma_total(const EnvironmentParams& env) {
  DecoherenceBreakdown d;
  d.air = gamma_air(env);
  d.blackbody = lambda_blackbody(env);
  d.gamma_bb_hz = d.blackbody.lambda_bb * env.delta_x_m * env.delta_x_m;
  d.gamma_total_hz = d.air.gamma_hz + d.gamma_bb_hz;
  d.warnings = d.air.warnings;
  d.warnings.insert(d.warnings.end(), d.blackbody.warnings.begin(),
                    d.blackbody.warnings.end());
  return d;
}

}  // namespace qgem
