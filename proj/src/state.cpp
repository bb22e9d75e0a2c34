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

#include "qgem/state.hpp"

#include <cmath>
#include <string>

namespace qgem {

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void DecoherenceSpec::validate() const {
  if (!(gamma_hz >= 0.0) || !std::isfinite(gamma_hz)) {
    throw std::invalid_argument("decoherence rate gamma must be >= 0");
  }
  if (!(tau_s >= 0.0) || !std::isfinite(tau_s)) {
    throw std::invalid_argument("decoherence time tau must be >= 0");
  }
}

QuantumState initial_state(std::size_t n, std::size_t levels) {
  const std::vector<std::size_t> dims(n, levels);
  const std::size_t dim = hilbert_dim(dims);
  QuantumState state;
  state.n = n;
  state.levels = levels;
  state.amplitudes.assign(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  return state;
}

QuantumState evolve(const QuantumState& state, const BranchPhaseTable& table,
                    double tau_s) {
  if (table.n != state.n || table.levels != state.levels ||
      table.rates.size() != state.amplitudes.size()) {
    throw DimensionError("evolve: phase table shape does not match the state");
  }
  QuantumState out = state;
  for (std::size_t b = 0; b < out.amplitudes.size(); ++b) {
    out.amplitudes[b] *= std::polar(1.0, table.rates[b] * tau_s);
  }
  return out;
}

DensityMatrix density_matrix(const QuantumState& state) {
  return {state.n, state.levels, ComplexMatrix::outer(state.amplitudes)};
}

std::size_t differing_particles(std::size_t row, std::size_t col, std::size_t n,
                                std::size_t levels) {
  std::size_t delta = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (row % levels != col % levels) ++delta;
    row /= levels;
    col /= levels;
  }
  return delta;
}

DensityMatrix apply_decoherence(const DensityMatrix& rho,
                                const DecoherenceSpec& spec) {
  spec.validate();
  DensityMatrix out = rho;
  const std::size_t dim = rho.matrix.dim();
  // exp(-delta * gamma * tau) for delta = 0..n
  std::vector<double> damping(rho.n + 1);
  for (std::size_t delta = 0; delta <= rho.n; ++delta) {
    damping[delta] = std::exp(-static_cast<double>(delta) * spec.gamma_hz * spec.tau_s);
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (r == c) continue;
      out.matrix(r, c) *= damping[differing_particles(r, c, rho.n, rho.levels)];
    }
  }
  return out;
}

DensityMatrix decohered_state(const BranchPhaseTable& table, double tau_s,
                              double gamma_hz) {
  DecoherenceSpec{gamma_hz, tau_s}.validate();
  const std::size_t dim = table.rates.size();
  const double weight = 1.0 / static_cast<double>(dim);
  std::vector<double> damping(table.n + 1);
  for (std::size_t delta = 0; delta <= table.n; ++delta) {
    damping[delta] = std::exp(-static_cast<double>(delta) * gamma_hz * tau_s);
  }
  DensityMatrix rho{table.n, table.levels, ComplexMatrix(dim)};
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double phase = (table.rates[r] - table.rates[c]) * tau_s;
      rho.matrix(r, c) =
          std::polar(weight * damping[differing_particles(r, c, table.n, table.levels)],
                     phase);
    }
  }
  return rho;
}

}  // namespace qgem
