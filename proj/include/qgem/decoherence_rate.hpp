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

#include <complex>
#include <string>
#include <vector>

namespace qgem {

namespace constants {
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kPlanck = 6.62607015e-34;         // J s
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kZeta9 = 1.002008392826082;
}  // namespace constants

/// Environment of the levitated spheres. Rates are per metre squared of
/// superposition width, so Gamma = Lambda * dx^2 in the long-wavelength limit.
struct EnvironmentParams {
  double temperature_env_k = 0.15;
  double temperature_int_k = 0.15;
  double number_density_m3 = 1e8;
  double sphere_radius_m = 1e-6;
  double gas_mass_kg = 28.97 * constants::kAtomicMassUnit;
  std::complex<double> dielectric{5.68, 1.1e-4};
  double delta_x_m = 250e-6;

  /// Throws ConfigError unless every real quantity is positive (delta_x may be
  /// zero) and Im(dielectric) >= 0.
  void validate() const;
};

/// A regime-validity check that failed; values are reported, never clamped.
struct RateWarning {
  std::string code;
  std::string message;
};

/// Thermal de Broglie wavelength of the gas, h / sqrt(2 pi m k_B T_e).
double thermal_wavelength_air(const EnvironmentParams& env);

/// Lambda_air = (8 / 3 hbar^2) (N/V) a^2 sqrt(2 pi m) (k_B T_e)^{3/2}.
double lambda_air(const EnvironmentParams& env);

struct AirRate {
  double wavelength_m = 0.0;
  double lambda_air = 0.0;
  double gamma_hz = 0.0;
  std::vector<RateWarning> warnings;
};

/// Gamma_air = lambda_air^2 * Lambda_air; warns when lambda_air > dx / 10.
AirRate gamma_air(const EnvironmentParams& env);

/// Thermal photon wavelength h c / (k_B T_e).
double thermal_wavelength_photon(const EnvironmentParams& env);

struct BlackbodyRate {
  double lambda_s = 0.0;  // scattering, T_e
  double lambda_e = 0.0;  // emission, T_i
  double lambda_a = 0.0;  // absorption, T_e
  double lambda_bb = 0.0;
  double wavelength_m = 0.0;
  std::vector<RateWarning> warnings;
};

/// Long-wavelength scattering, emission and absorption localisation rates;
/// warns when the photon wavelength is below 10 dx.
BlackbodyRate lambda_blackbody(const EnvironmentParams& env);

struct DecoherenceBreakdown {
  AirRate air;
  BlackbodyRate blackbody;
  double gamma_bb_hz = 0.0;
  double gamma_total_hz = 0.0;
  std::vector<RateWarning> warnings;
};

/// gamma = Gamma_air + Lambda_bb * dx^2.
DecoherenceBreakdown gamma_total(const EnvironmentParams& env);

}  // namespace qgem
