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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qgem/geometry.hpp"
#include "qgem/linalg.hpp"

namespace qgem {

/// Single-qubit Pauli letter. The enumerator order (I < X < Y < Z) is the
/// lexicographic order used everywhere strings are sorted.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter letter);
PauliLetter parse_pauli_letter(char c);

/// Tensor product of single-qubit Paulis; letter 0 acts on particle 1.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliLetter> letters) : letters_(std::move(letters)) {}

  /// From text such as "IXZ"; '1' is accepted as an alias of 'I'.
  static PauliString parse(std::string_view text);
  /// String number `index` of the 4^n enumeration in lexicographic order.
  static PauliString from_index(std::size_t index, std::size_t n);

  std::size_t size() const { return letters_.size(); }
  PauliLetter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<PauliLetter>& letters() const { return letters_; }

  bool is_identity() const;
  std::string to_string() const;

  /// Dense 2^n x 2^n matrix (Kronecker product of the letters).
  ComplexMatrix matrix() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<PauliLetter> letters_;
};

/// Qubit-wise commutation: at every position the letters match or one is I.
bool qwc(const PauliString& p, const PauliString& q);

/// Re Tr(P * op) / 2^n without forming P.
Complex pauli_overlap(const PauliString& p, const ComplexMatrix& op);

struct PauliTerm {
  PauliString string;
  double coefficient = 0.0;
};

/// op = sum_P c_P P, terms in lexicographic order of their strings.
struct PauliDecomposition {
  std::size_t n = 0;
  std::vector<PauliTerm> terms;
  double zero_threshold = 1e-9;

  /// Coefficient of I...I, 0 when it was dropped.
  double identity_coefficient() const;
  /// Indices into `terms` of every non-identity term.
  std::vector<std::size_t> measured_terms() const;
  ComplexMatrix reconstruct() const;
};

inline constexpr double kDefaultZeroThreshold = 1e-9;

/// Coefficients c_P = Tr(P op) / 2^n for all 4^n strings, keeping those with
/// |c_P| >= zero_threshold. Throws DimensionError unless dim = 2^n, and
/// NotHermitianError for non-Hermitian input.
PauliDecomposition decompose(const ComplexMatrix& op, std::size_t n,
                             double zero_threshold = kDefaultZeroThreshold);

/// Order in which terms are offered to the greedy colouring.
enum class VertexOrder {
  /// Decomposition (lexicographic) order. Gives the expected group
  /// counts for the QGEM witnesses.
  kTermOrder,
  /// Descending conflict degree, ties broken lexicographically.
  kLargestDegreeFirst,
};

/// Jointly measurable groups of non-identity terms.
struct MeasurementPlan {
  /// Indices into PauliDecomposition::terms.
  std::vector<std::vector<std::size_t>> groups;
  /// Per group, the local basis (X, Y or Z) every particle is measured in.
  std::vector<PauliString> shared_basis;

  std::size_t size() const { return groups.size(); }
};

/// Greedy colouring of the conflict graph (edge = not qwc): each term joins
/// the lowest-numbered group it qubit-wise commutes with, else opens a new
/// one. The identity term is never grouped.
MeasurementPlan group_ldfc(const PauliDecomposition& decomposition,
                           VertexOrder order = VertexOrder::kTermOrder);

/// True when every pair inside every group qubit-wise commutes and the groups
/// partition the non-identity terms.
bool plan_is_valid(const PauliDecomposition& decomposition,
                   const MeasurementPlan& plan);

struct OperatorCounts {
  /// Terms in the decomposition, identity included.
  std::size_t num_operators = 0;
  std::size_t num_groups = 0;
};

/// Decomposes and groups the self-witness of the (gamma, tau) state of a
/// qubit setup.
OperatorCounts operator_counts(const SetupGeometry& setup, std::size_t subsystem,
                               double gamma_hz, double tau_s,
                               const PhysicalParams& params = {},
                               VertexOrder order = VertexOrder::kTermOrder);

/// {"n", "terms": [{"pauli", "coefficient"}], "groups": [{"members",
///  "paulis", "basis"}], "summary": {"operators", "groups"}}
nlohmann::json plan_to_json(const PauliDecomposition& decomposition,
                            const MeasurementPlan& plan);

}  // namespace qgem
