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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qgem/linalg.hpp"
#include "qgem/state.hpp"

namespace qgem::testing {

using EMatrix = Eigen::MatrixXcd;

inline EMatrix to_eigen(const ComplexMatrix& m) {
  EMatrix e(m.dim(), m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) e(r, c) = m(r, c);
  }
  return e;
}

inline ComplexMatrix from_eigen(const EMatrix& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  }
  return m;
}

/// Ascending spectrum from Eigen's Hermitian solver.
inline std::vector<double> eigen_spectrum(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<EMatrix> solver(to_eigen(m));
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = normal(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      m(r, c) = Complex(normal(rng), normal(rng));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

/// Random density matrix A A^dagger / Tr.
inline ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  EMatrix a(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = Complex(normal(rng), normal(rng));
  }
  EMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return from_eigen(rho);
}

/// Partial transpose of qubit `sub` by explicit bit arithmetic, independent of
/// the library's digit-swap implementation.
inline ComplexMatrix oracle_partial_transpose_qubits(const ComplexMatrix& rho,
                                                     std::size_t n, std::size_t sub) {
  const std::size_t bit = std::size_t{1} << (n - 1 - sub);
  ComplexMatrix out(rho.dim());
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      const std::size_t r2 = (r & ~bit) | (c & bit);
      const std::size_t c2 = (c & ~bit) | (r & bit);
      out(r2, c2) = rho(r, c);
    }
  }
  return out;
}

/// (|00> + |11>) / sqrt(2) as a density matrix.
inline ComplexMatrix bell_density() {
  ComplexMatrix m(4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

inline DensityMatrix as_state(ComplexMatrix m, std::size_t n, std::size_t levels) {
  return {n, levels, std::move(m)};
}

}  // namespace qgem::testing
