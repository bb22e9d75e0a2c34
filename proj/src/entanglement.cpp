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

#include "qgem/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgem/geometry.hpp"

namespace qgem {

namespace {

constexpr double kDegeneracyTolerance = 1e-9;

// Lexicographic comparison of |amplitude| sequences, equal within tolerance.
bool magnitudes_greater(const std::vector<Complex>& a,
                        const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = std::abs(a[i]);
    const double y = std::abs(b[i]);
    if (std::abs(x - y) > kDegeneracyTolerance) return x > y;
  }
  return false;
}

void fix_global_phase(std::vector<Complex>& v) {
  for (const auto& z : v) {
    if (std::abs(z) > kDegeneracyTolerance) {
      const Complex rotate = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= rotate;
      return;
    }
  }
}

}  // namespace

std::string_view to_string(WitnessSource source) {
  return source == WitnessSource::kSelf ? "self" : "fixed";
}

WitnessSource parse_witness_source(std::string_view name) {
  if (name == "self") return WitnessSource::kSelf;
  if (name == "fixed") return WitnessSource::kFixed;
  throw ConfigError("unknown witness mode '" + std::string(name) +
                    "' (expected self or fixed)");
}

double von_neumann_entropy_bits(std::span<const double> eigenvalues) {
  // Eigenvalues within rounding of 0 or 1 contribute exactly nothing.
  constexpr double kRounding = 1e-12;
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p > kRounding && p < 1.0 - kRounding) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double entanglement_entropy(const DensityMatrix& rho,
                            std::span<const std::size_t> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("entanglement_entropy: keep set is empty");
  }
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("entanglement_entropy: repeated particle index");
  }
  if (sorted.back() >= rho.n) {
    throw std::invalid_argument("entanglement_entropy: particle index out of range");
  }
  if (sorted.size() == rho.n) {
    throw std::invalid_argument(
        "entanglement_entropy: keep set covers every particle (no bipartition)");
  }
  const auto dims = rho.dims();
  const ComplexMatrix reduced = partial_trace(rho.matrix, dims, sorted);
  const EigenResult eig = eig_hermitian(reduced);
  return von_neumann_entropy_bits(eig.eigenvalues);
}

MinEigenpair ppt_min_eigenpair(const DensityMatrix& rho, std::size_t subsystem) {
  if (subsystem >= rho.n) {
    throw std::invalid_argument("ppt_min_eigenpair: subsystem " +
                                std::to_string(subsystem) + " out of range");
  }
  const auto dims = rho.dims();
  const EigenResult eig = eig_hermitian(partial_transpose(rho.matrix, dims, subsystem));

  const double lowest = eig.eigenvalues.front();
  std::vector<Complex> best = eig.eigenvector(0);
  for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] - lowest > kDegeneracyTolerance) break;
    auto candidate = eig.eigenvector(k);
    if (magnitudes_greater(candidate, best)) best = std::move(candidate);
  }
  fix_global_phase(best);
  return {lowest, std::move(best)};
}

WitnessOperator build_witness(const DensityMatrix& reference,
                              std::size_t subsystem, WitnessSource source) {
  const MinEigenpair pair = ppt_min_eigenpair(reference, subsystem);
  const auto dims = reference.dims();
  WitnessOperator w;
  w.n = reference.n;
  w.levels = reference.levels;
  w.matrix = partial_transpose(ComplexMatrix::outer(pair.vector), dims, subsystem);
  w.transposed_subsystem = subsystem;
  w.source = source;
  return w;
}

double witness_expectation(const WitnessOperator& witness,
                           const DensityMatrix& rho) {
  if (witness.matrix.dim() != rho.matrix.dim()) {
    throw DimensionError("witness_expectation: witness and state dimensions differ");
  }
  // Tr(W rho) = sum_{r,c} W(r,c) rho(c,r)
  Complex acc{0.0, 0.0};
  const std::size_t dim = rho.matrix.dim();
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) acc += witness.matrix(r, c) * rho.matrix(c, r);
  }
  return acc.real();
}

}  // namespace qgem
