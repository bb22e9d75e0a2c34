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

#include "qgem/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgem/entanglement.hpp"
#include "qgem/state.hpp"

namespace qgem {

namespace {

ComplexMatrix letter_matrix(PauliLetter letter) {
  using namespace std::complex_literals;
  switch (letter) {
    case PauliLetter::I:
      return ComplexMatrix(2, {1.0, 0.0, 0.0, 1.0});
    case PauliLetter::X:
      return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case PauliLetter::Y:
      return ComplexMatrix(2, {0.0, -1i, 1i, 0.0});
    case PauliLetter::Z:
      return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
  }
  return {};
}

}  // namespace

char to_char(PauliLetter letter) {
  constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(letter)];
}

PauliLetter parse_pauli_letter(char c) {
  switch (c) {
    case 'I':
    case '1':
      return PauliLetter::I;
    case 'X':
      return PauliLetter::X;
    case 'Y':
      return PauliLetter::Y;
    case 'Z':
      return PauliLetter::Z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString PauliString::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  std::vector<PauliLetter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(parse_pauli_letter(c));
  return PauliString(std::move(letters));
}

PauliString PauliString::from_index(std::size_t index, std::size_t n) {
  std::vector<PauliLetter> letters(n);
  for (std::size_t p = n; p-- > 0;) {
    letters[p] = static_cast<PauliLetter>(index % 4);
    index /= 4;
  }
  return PauliString(std::move(letters));
}

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](PauliLetter l) { return l == PauliLetter::I; });
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto l : letters_) s.push_back(to_char(l));
  return s;
}

ComplexMatrix PauliString::matrix() const {
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (auto l : letters_) m = tensor(m, letter_matrix(l));
  return m;
}

bool qwc(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("qwc: Pauli strings have different lengths");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != q[i] && p[i] != PauliLetter::I && q[i] != PauliLetter::I) {
      return false;
    }
  }
  return true;
}

Complex pauli_overlap(const PauliString& p, const ComplexMatrix& op) {
  using namespace std::complex_literals;
  const std::size_t n = p.size();
  const std::size_t dim = std::size_t{1} << n;
  if (op.dim() != dim) {
    throw DimensionError("pauli_overlap: operator dimension does not match 2^n");
  }
  // P|c> = phase(c) |c ^ flip|, so Tr(P op) = sum_c phase(c) op(c, c ^ flip).
  std::size_t flip = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == PauliLetter::X || p[i] == PauliLetter::Y) {
      flip |= std::size_t{1} << (n - 1 - i);
    }
  }
  Complex acc{0.0, 0.0};
  for (std::size_t c = 0; c < dim; ++c) {
    Complex phase{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const bool bit = (c >> (n - 1 - i)) & 1U;
      if (p[i] == PauliLetter::Y) {
        phase *= bit ? -1i : 1i;
      } else if (p[i] == PauliLetter::Z && bit) {
        phase = -phase;
      }
    }
    acc += phase * op(c, c ^ flip);
  }
  return acc / static_cast<double>(dim);
}

double PauliDecomposition::identity_coefficient() const {
  for (const auto& t : terms) {
    if (t.string.is_identity()) return t.coefficient;
  }
  return 0.0;
}

std::vector<std::size_t> PauliDecomposition::measured_terms() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].string.is_identity()) idx.push_back(i);
  }
  return idx;
}

ComplexMatrix PauliDecomposition::reconstruct() const {
  ComplexMatrix out(std::size_t{1} << n);
  for (const auto& t : terms) out += t.string.matrix() * Complex{t.coefficient, 0.0};
  return out;
}

PauliDecomposition decompose(const ComplexMatrix& op, std::size_t n,
                             double zero_threshold) {
  if (n == 0 || n > 13 || op.dim() != (std::size_t{1} << n)) {
    throw DimensionError("decompose: operator dimension " +
                         std::to_string(op.dim()) + " is not 2^" +
                         std::to_string(n) +
                         " (only qubit operators can be decomposed)");
  }
  if (!op.is_hermitian()) {
    throw NotHermitianError("decompose: operator is not Hermitian");
  }
  PauliDecomposition out;
  out.n = n;
  out.zero_threshold = zero_threshold;
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t k = 0; k < count; ++k) {
    PauliString p = PauliString::from_index(k, n);
    const double c = pauli_overlap(p, op).real();
    if (std::abs(c) >= zero_threshold) out.terms.push_back({std::move(p), c});
  }
  return out;
}

MeasurementPlan group_ldfc(const PauliDecomposition& decomposition,
                           VertexOrder order) {
  const auto& terms = decomposition.terms;
  std::vector<std::size_t> vertices = decomposition.measured_terms();

  if (order == VertexOrder::kLargestDegreeFirst) {
    std::vector<std::size_t> degree(terms.size(), 0);
    for (std::size_t a : vertices) {
      for (std::size_t b : vertices) {
        if (a != b && !qwc(terms[a].string, terms[b].string)) ++degree[a];
      }
    }
    std::stable_sort(vertices.begin(), vertices.end(), [&](std::size_t a, std::size_t b) {
      if (degree[a] != degree[b]) return degree[a] > degree[b];
      return terms[a].string < terms[b].string;
    });
  }

  MeasurementPlan plan;
  for (std::size_t v : vertices) {
    bool placed = false;
    for (auto& group : plan.groups) {
      const bool fits = std::all_of(group.begin(), group.end(), [&](std::size_t u) {
        return qwc(terms[u].string, terms[v].string);
      });
      if (fits) {
        group.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) plan.groups.push_back({v});
  }

  for (const auto& group : plan.groups) {
    std::vector<PauliLetter> basis(decomposition.n, PauliLetter::Z);
    for (std::size_t q = 0; q < decomposition.n; ++q) {
      for (std::size_t u : group) {
        if (terms[u].string[q] != PauliLetter::I) {
          basis[q] = terms[u].string[q];
          break;
        }
      }
    }
    plan.shared_basis.emplace_back(std::move(basis));
  }
  return plan;
}

bool plan_is_valid(const PauliDecomposition& decomposition,
                   const MeasurementPlan& plan) {
  const auto& terms = decomposition.terms;
  std::vector<int> seen(terms.size(), 0);
  for (const auto& group : plan.groups) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      if (group[a] >= terms.size() || terms[group[a]].string.is_identity()) {
        return false;
      }
      ++seen[group[a]];
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        if (!qwc(terms[group[a]].string, terms[group[b]].string)) return false;
      }
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const int expected = terms[i].string.is_identity() ? 0 : 1;
    if (seen[i] != expected) return false;
  }
  return true;
}

OperatorCounts operator_counts(const SetupGeometry& setup, std::size_t subsystem,
                               double gamma_hz, double tau_s,
                               const PhysicalParams& params, VertexOrder order) {
  if (setup.levels != 2) {
    throw std::invalid_argument(
        "operator_counts: Pauli decomposition needs qubits (D=2)");
  }
  const auto rho = decohered_state(phase_table(setup, params), tau_s, gamma_hz);
  const auto witness = build_witness(rho, subsystem);
  const auto decomposition = decompose(witness.matrix, setup.n);
  const auto plan = group_ldfc(decomposition, order);
  return {decomposition.terms.size(), plan.size()};
}

nlohmann::json plan_to_json(const PauliDecomposition& decomposition,
                            const MeasurementPlan& plan) {
  nlohmann::json j;
  j["n"] = decomposition.n;
  j["zero_threshold"] = decomposition.zero_threshold;
  auto& terms = j["terms"] = nlohmann::json::array();
  for (const auto& t : decomposition.terms) {
    terms.push_back({{"pauli", t.string.to_string()}, {"coefficient", t.coefficient}});
  }
  auto& groups = j["groups"] = nlohmann::json::array();
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    nlohmann::json paulis = nlohmann::json::array();
    for (std::size_t idx : plan.groups[g]) {
      paulis.push_back(decomposition.terms[idx].string.to_string());
    }
    groups.push_back({{"members", plan.groups[g]},
                      {"paulis", paulis},
                      {"basis", plan.shared_basis[g].to_string()}});
  }
  j["summary"] = {{"operators", decomposition.terms.size()},
                  {"groups", plan.groups.size()}};
  return j;
}

}  // namespace qgem
