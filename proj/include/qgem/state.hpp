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
#include <vector>

#include "qgem/geometry.hpp"
#include "qgem/linalg.hpp"

namespace qgem {

/// Pure state of n particles with D arms each, in the branch (position) basis.
struct QuantumState {
  std::size_t n = 0;
  std::size_t levels = 0;
  std::vector<Complex> amplitudes;

  std::vector<std::size_t> dims() const { return std::vector<std::size_t>(n, levels); }
  double norm() const;
};

struct DensityMatrix {
  std::size_t n = 0;
  std::size_t levels = 0;
  ComplexMatrix matrix;

  std::vector<std::size_t> dims() const { return std::vector<std::size_t>(n, levels); }
};

/// Environmental dephasing rate and exposure time.
struct DecoherenceSpec {
  double gamma_hz = 0.0;
  double tau_s = 0.0;

  void validate() const;
};

/// Uniform product superposition; every amplitude is D^(-n/2).
QuantumState initial_state(std::size_t n, std::size_t levels);

/// Multiplies each branch amplitude by exp(i * rate * tau).
QuantumState evolve(const QuantumState& state, const BranchPhaseTable& table,
                    double tau_s);

/// |psi><psi|
DensityMatrix density_matrix(const QuantumState& state);

/// Number of particles whose branch index differs between two basis labels.
std::size_t differing_particles(std::size_t row, std::size_t col, std::size_t n,
                                std::size_t levels);

/// Scales entry (b, b') by exp(-delta * gamma * tau), delta being the number of
/// particles whose arm differs between b and b'. Diagonal entries are kept.
DensityMatrix apply_decoherence(const DensityMatrix& rho,
                                const DecoherenceSpec& spec);

/// Evolved and dephased state in closed form:
///   rho(b, b') = D^-n * exp(i (phi_b - phi_b') tau) * exp(-delta gamma tau).
DensityMatrix decohered_state(const BranchPhaseTable& table, double tau_s,
                              double gamma_hz);

}  // namespace qgem
