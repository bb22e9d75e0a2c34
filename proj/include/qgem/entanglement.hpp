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
#include <span>
#include <string_view>
#include <vector>

#include "qgem/linalg.hpp"
#include "qgem/state.hpp"

namespace qgem {

/// Where the witness came from: the state being evaluated, or a reference
/// state frozen at some other (gamma, tau).
enum class WitnessSource { kSelf, kFixed };

std::string_view to_string(WitnessSource source);
WitnessSource parse_witness_source(std::string_view name);

/// W = (|l><l|)^{T_s}, where |l> is the eigenvector of the smallest eigenvalue
/// of rho^{T_s}. Trace one by construction.
struct WitnessOperator {
  std::size_t n = 0;
  std::size_t levels = 0;
  ComplexMatrix matrix;
  std::size_t transposed_subsystem = 0;
  WitnessSource source = WitnessSource::kSelf;
};

struct MinEigenpair {
  double value = 0.0;
  std::vector<Complex> vector;
};

/// von Neumann entropy (bits) of the particles in `keep`, with 0 log 0 = 0.
double entanglement_entropy(const DensityMatrix& rho,
                            std::span<const std::size_t> keep);

/// -sum p log2 p over a spectrum, clamping tiny negative eigenvalues to 0.
double von_neumann_entropy_bits(std::span<const double> eigenvalues);

/// Smallest eigenvalue of rho^{T_subsystem} and its eigenvector. A degenerate
/// minimum picks the eigenvector whose |amplitude| sequence is
/// lexicographically largest; the global phase makes the first non-zero
/// amplitude real and positive.
MinEigenpair ppt_min_eigenpair(const DensityMatrix& rho, std::size_t subsystem);

WitnessOperator build_witness(const DensityMatrix& reference,
                              std::size_t subsystem,
                              WitnessSource source = WitnessSource::kSelf);

/// Re Tr(W rho).
double witness_expectation(const WitnessOperator& witness,
                           const DensityMatrix& rho);

}  // namespace qgem
