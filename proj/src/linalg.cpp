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

#include "qgem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qgem {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

// Digit decomposition of a basis index, most significant particle first.
std::vector<std::size_t> strides_for(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

void check_layout(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                  const char* what) {
  if (dims.empty()) {
    throw DimensionError(std::string(what) + ": empty dimension list");
  }
  if (hilbert_dim(dims) != rho.dim()) {
    throw DimensionError(std::string(what) +
                         ": product of subsystem dimensions (" +
                         std::to_string(hilbert_dim(dims)) +
                         ") does not match matrix dimension (" +
                         std::to_string(rho.dim()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}) {
  if (dim > kMaxDim) {
    throw DimensionError("matrix dimension " + std::to_string(dim) +
                         " exceeds limit " + std::to_string(kMaxDim));
  }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim > kMaxDim) {
    throw DimensionError("matrix dimension " + std::to_string(dim) +
                         " exceeds limit " + std::to_string(kMaxDim));
  }
  if (entries_.size() != dim * dim) {
    throw DimensionError("entry count " + std::to_string(entries_.size()) +
                         " is not dim^2 for dim " + std::to_string(dim));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) {
      m(r, c) = v[r] * std::conj(v[c]);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
    }
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  require_same_dim(*this, other, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
  }
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  const double scale = std::max(1.0, max_abs());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol * scale) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) {
    throw DimensionError("apply: vector length " + std::to_string(v.size()) +
                         " does not match dimension " + std::to_string(dim_));
  }
  std::vector<Complex> out(dim_, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

std::vector<Complex> EigenResult::eigenvector(std::size_t k) const {
  const std::size_t n = eigenvectors.dim();
  std::vector<Complex> v(n);
  for (std::size_t r = 0; r < n; ++r) v[r] = eigenvectors(r, k);
  return v;
}

std::size_t hilbert_dim(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimensionError("subsystem dimension must be positive");
    if (total > kMaxDim / d) {
      throw DimensionError("Hilbert dimension exceeds limit " +
                           std::to_string(kMaxDim));
    }
    total *= d;
  }
  return total;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 0 && b.dim() > kMaxDim / a.dim()) {
    throw DimensionError("tensor: resulting dimension " +
                         std::to_string(a.dim() * b.dim()) + " exceeds limit " +
                         std::to_string(kMaxDim));
  }
  const std::size_t nb = b.dim();
  ComplexMatrix out(a.dim() * nb);
  for (std::size_t ar = 0; ar < a.dim(); ++ar) {
    for (std::size_t ac = 0; ac < a.dim(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < nb; ++br) {
        for (std::size_t bc = 0; bc < nb; ++bc) {
          out(ar * nb + br, ac * nb + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  check_layout(rho, dims, "partial_trace");
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      throw DimensionError("partial_trace: particle index " +
                           std::to_string(k) + " out of range");
    }
    if (kept[k]) {
      throw DimensionError("partial_trace: particle index " +
                           std::to_string(k) + " listed twice");
    }
    kept[k] = true;
  }

  // Split every basis index into its kept and traced-out parts.
  const auto strides = strides_for(dims);
  const std::size_t n = rho.dim();
  std::vector<std::size_t> kept_index(n, 0);
  std::vector<std::size_t> traced_index(n, 0);
  std::size_t kept_dim = 1;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (kept[p]) kept_dim *= dims[p];
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    std::size_t t = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) {
      const std::size_t digit = (i / strides[p]) % dims[p];
      if (kept[p]) {
        k = k * dims[p] + digit;
      } else {
        t = t * dims[p] + digit;
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  ComplexMatrix out(kept_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (traced_index[i] == traced_index[j]) {
        out(kept_index[i], kept_index[j]) += rho(i, j);
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                std::span<const std::size_t> dims,
                                std::size_t subsystem) {
  check_layout(rho, dims, "partial_transpose");
  if (subsystem >= dims.size()) {
    throw DimensionError("partial_transpose: subsystem " +
                         std::to_string(subsystem) + " out of range");
  }
  const std::size_t stride = strides_for(dims)[subsystem];
  const std::size_t d = dims[subsystem];
  const std::size_t n = rho.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = (i / stride) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dj = (j / stride) % d;
      // Swap the subsystem digit between row and column.
      const std::size_t ii = i - di * stride + dj * stride;
      const std::size_t jj = j - dj * stride + di * stride;
      out(ii, jj) = rho(i, j);
    }
  }
  return out;
}

EigenResult eig_hermitian(const ComplexMatrix& a) {
  if (!a.is_hermitian()) {
    throw NotHermitianError("eig_hermitian: input is not Hermitian");
  }
  const std::size_t n = a.dim();
  ComplexMatrix m = a.hermitian_part();
  // Row j holds eigenvector j, so every rotation touches contiguous memory.
  ComplexMatrix vt = ComplexMatrix::identity(n);

  // Plain product; std::complex operator* adds slow inf/nan recovery.
  const auto mul = [](Complex x, Complex y) {
    return Complex(x.real() * y.real() - x.imag() * y.imag(),
                   x.real() * y.imag() + x.imag() * y.real());
  };

  const double scale = std::max(m.frobenius_norm(), 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    }
    if (std::sqrt(off) <= 1e-16 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300 || mag <= 1e-18 * scale) continue;

        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] makes the (p,q) entry
        // real and then annihilates it; m <- J^dagger m J.
        const Complex phase = apq / mag;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Rows p and q of J^dagger m; columns follow by Hermiticity.
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex mpk = m(p, k);
          const Complex mqk = mul(phase, m(q, k));
          const Complex new_p = c * mpk - s * mqk;
          const Complex new_q = s * mpk + c * mqk;
          m(p, k) = new_p;
          m(q, k) = new_q;
          m(k, p) = std::conj(new_p);
          m(k, q) = std::conj(new_q);
        }
        m(p, p) = app - t * mag;
        m(q, q) = aqq + t * mag;
        m(p, q) = 0.0;
        m(q, p) = 0.0;

        const Complex rot = std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vp = vt(p, k);
          const Complex vq = mul(rot, vt(q, k));
          vt(p, k) = c * vp - s * vq;
          vt(q, k) = s * vp + c * vq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return m(x, x).real() < m(y, y).real();
  });

  EigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = m(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) {
      result.eigenvectors(r, k) = vt(order[k], r);
    }
  }
  return result;
}

}  // namespace qgem
