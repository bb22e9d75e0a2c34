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
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qgem {

using Complex = std::complex<double>;

/// Largest Hilbert-space dimension any operation will produce.
inline constexpr std::size_t kMaxDim = 10000;

/// Absolute Hermiticity tolerance for unit-scale matrices.
inline constexpr double kHermitianTolerance = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix stored row-major.
///
/// Basis indices follow the global convention that particle 1 is the most
/// significant digit, i.e. |j1 j2 ... jn> has index j1*D^(n-1) + ... + jn.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const { return dim_; }
  std::span<const Complex> entries() const { return entries_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  /// (A + A^dagger) / 2
  ComplexMatrix hermitian_part() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  /// Largest elementwise |A - B|.
  double max_abs_diff(const ComplexMatrix& other) const;
  /// max|A - A^dagger| <= tol * max(1, max|A|)
  bool is_hermitian(double tol = kHermitianTolerance) const;

  std::vector<Complex> apply(std::span<const Complex> v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) {
    return lhs *= scale;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) {
    return rhs *= scale;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

/// Spectrum of a Hermitian matrix. Eigenvalues ascend; eigenvectors are the
/// columns of `eigenvectors`, in the same order.
struct EigenResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::vector<Complex> eigenvector(std::size_t k) const;
};

/// Kronecker product a (x) b; `a` indexes the most significant digit.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced matrix on the particles listed in `keep` (kept in ascending
/// order), tracing out every other particle.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Transpose of the `subsystem` factor only.
ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                std::span<const std::size_t> dims,
                                std::size_t subsystem);

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input is symmetrized first; anything further than
/// kHermitianTolerance (scaled by max|A|) from Hermitian is rejected.
EigenResult eig_hermitian(const ComplexMatrix& a);

/// Product of the entries of `dims`, rejecting results above kMaxDim.
std::size_t hilbert_dim(std::span<const std::size_t> dims);

}  // namespace qgem
