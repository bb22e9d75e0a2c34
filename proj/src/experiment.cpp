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

#include "qgem/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "qgem/entanglement.hpp"
#include "qgem/parallel.hpp"

namespace qgem {

namespace {

constexpr double kExpectationSlack = 1e-9;

void require_qubits(const DensityMatrix& rho, std::size_t n) {
  if (rho.levels != 2 || rho.n != n) {
    throw DimensionError("Pauli sampling needs an n-qubit state matching the string");
  }
}

// Bit of particle i in an MSB-first basis index.
std::size_t particle_bit(std::size_t i, std::size_t n) {
  return std::size_t{1} << (n - 1 - i);
}

std::size_t support_mask(const PauliString& p) {
  std::size_t mask = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != PauliLetter::I) mask |= particle_bit(i, p.size());
  }
  return mask;
}

// Local unitary taking the eigenbasis of `letter` to the computational basis,
// +1 eigenvector onto |0>: H for X, H S^dagger for Y.
ComplexMatrix basis_rotation(PauliLetter letter) {
  using namespace std::complex_literals;
  const double h = 1.0 / std::sqrt(2.0);
  switch (letter) {
    case PauliLetter::X:
      return ComplexMatrix(2, {h, h, h, -h});
    case PauliLetter::Y:
      return ComplexMatrix(2, {h, -1i * h, h, 1i * h});
    default:
      return ComplexMatrix::identity(2);
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double TermRecord::mean() const {
  return shots == 0 ? 0.0
                    : static_cast<double>(outcome_sum) / static_cast<double>(shots);
}

double TermRecord::variance() const {
  if (shots < 2) return 0.0;
  const double k = static_cast<double>(shots);
  const double s = static_cast<double>(outcome_sum);
  return std::max(0.0, (k - s * s / k) / (k - 1.0));
}

double GroupRecord::covariance(std::size_t a, std::size_t b,
                               std::span<const TermRecord> terms) const {
  if (a == b) return terms[members[a]].variance();
  if (a > b) std::swap(a, b);
  if (shots < 2) return 0.0;
  const std::size_t m = members.size();
  // Offset of (a, b) in the strict upper triangle, row-major.
  const std::size_t pos = a * m - a * (a + 1) / 2 + (b - a - 1);
  const double k = static_cast<double>(shots);
  const double sa = static_cast<double>(terms[members[a]].outcome_sum);
  const double sb = static_cast<double>(terms[members[b]].outcome_sum);
  return (static_cast<double>(pair_sums[pos]) - sa * sb / k) / (k - 1.0);
}

std::string_view to_string(PlanMode mode) {
  return mode == PlanMode::kGrouped ? "grouped" : "ungrouped";
}

PlanMode parse_plan_mode(std::string_view name) {
  if (name == "ungrouped") return PlanMode::kUngrouped;
  if (name == "grouped") return PlanMode::kGrouped;
  throw ConfigError("unknown plan mode '" + std::string(name) +
                    "' (expected ungrouped or grouped)");
}

double pauli_expectation(const DensityMatrix& rho, const PauliString& p) {
  require_qubits(rho, p.size());
  return pauli_overlap(p, rho.matrix).real() *
         static_cast<double>(rho.matrix.dim());
}

TermRecord sample_term(const DensityMatrix& rho, const PauliString& p,
                       std::size_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("sample_term: shots must be >= 1");
  if (p.is_identity()) {
    throw std::invalid_argument("sample_term: the identity string is not measured");
  }
  const double e = pauli_expectation(rho, p);
  if (std::abs(e) > 1.0 + kExpectationSlack) {
    throw std::domain_error("sample_term: |Tr(P rho)| = " + std::to_string(std::abs(e)) +
                            " exceeds 1 (invalid state)");
  }
  const double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
  TermRecord rec{p, shots, 0};
  for (std::size_t s = 0; s < shots; ++s) rec.outcome_sum += rng.uniform() < p_plus ? 1 : -1;
  return rec;
}

std::vector<TermRecord> sample_group(const DensityMatrix& rho,
                                     std::span<const PauliString> members,
                                     std::size_t shots, Rng& rng,
                                     GroupRecord* joint) {
  if (members.empty()) throw std::invalid_argument("sample_group: empty group");
  if (shots == 0) throw std::invalid_argument("sample_group: shots must be >= 1");
  const std::size_t n = members.front().size();
  require_qubits(rho, n);
  for (std::size_t a = 0; a < members.size(); ++a) {
    if (members[a].is_identity()) {
      throw std::invalid_argument("sample_group: the identity string is not measured");
    }
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (!qwc(members[a], members[b])) {
        throw std::invalid_argument("sample_group: " + members[a].to_string() + " and " +
                                    members[b].to_string() +
                                    " do not qubit-wise commute");
      }
    }
  }

  std::vector<PauliLetter> basis(n, PauliLetter::Z);
  for (std::size_t q = 0; q < n; ++q) {
    for (const auto& m : members) {
      if (m[q] != PauliLetter::I) {
        basis[q] = m[q];
        break;
      }
    }
  }
  ComplexMatrix u = ComplexMatrix::identity(1);
  for (auto letter : basis) u = tensor(u, basis_rotation(letter));
  const ComplexMatrix rotated = u * rho.matrix * u.adjoint();

  const std::size_t dim = rotated.dim();
  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    acc += std::max(0.0, rotated(b, b).real());
    cdf[b] = acc;
  }
  if (!(acc > 0.0)) throw std::domain_error("sample_group: state has zero trace");

  std::vector<std::size_t> masks;
  masks.reserve(members.size());
  for (const auto& m : members) masks.push_back(support_mask(m));

  const std::size_t m = members.size();
  std::vector<TermRecord> out;
  out.reserve(m);
  for (const auto& member : members) out.push_back({member, shots, 0});
  std::vector<std::int64_t> pair_sums(m * (m - 1) / 2, 0);
  std::vector<int> x(m);

  for (std::size_t s = 0; s < shots; ++s) {
    const double r = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    const std::size_t b = std::min<std::size_t>(it - cdf.begin(), dim - 1);
    for (std::size_t k = 0; k < m; ++k) {
      x[k] = (std::popcount(b & masks[k]) & 1) ? -1 : 1;
      out[k].outcome_sum += x[k];
    }
    if (joint != nullptr) {
      std::size_t pos = 0;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = a + 1; c < m; ++c) pair_sums[pos++] += x[a] * x[c];
      }
    }
  }
  if (joint != nullptr) {
    joint->shots = shots;
    joint->pair_sums = std::move(pair_sums);
  }
  return out;
}

std::vector<std::size_t> round_robin(std::size_t budget, std::size_t units) {
  if (units == 0) throw std::invalid_argument("round_robin: no units to allocate to");
  std::vector<std::size_t> shots(units, budget / units);
  for (std::size_t i = 0; i < budget % units; ++i) ++shots[i];
  return shots;
}

MeasurementRecord run_measurements(const DensityMatrix& rho,
                                   const PauliDecomposition& decomposition,
                                   const MeasurementPlan* plan,
                                   std::size_t budget, std::uint64_t seed) {
  MeasurementRecord record;
  record.rng_seed = seed;
  record.total_shots = budget;
  record.terms.reserve(decomposition.terms.size());
  for (const auto& t : decomposition.terms) record.terms.push_back({t.string, 0, 0});

  Rng rng(seed);
  if (plan == nullptr) {
    const auto measured = decomposition.measured_terms();
    const auto shots = round_robin(budget, measured.size());
    for (std::size_t u = 0; u < measured.size(); ++u) {
      if (shots[u] == 0) continue;
      record.terms[measured[u]] =
          sample_term(rho, decomposition.terms[measured[u]].string, shots[u], rng);
    }
    return record;
  }

  const auto shots = round_robin(budget, plan->size());
  for (std::size_t g = 0; g < plan->size(); ++g) {
    GroupRecord joint;
    joint.members = plan->groups[g];
    if (shots[g] > 0) {
      std::vector<PauliString> strings;
      for (std::size_t idx : joint.members) strings.push_back(decomposition.terms[idx].string);
      auto results = sample_group(rho, strings, shots[g], rng, &joint);
      for (std::size_t k = 0; k < joint.members.size(); ++k) {
        record.terms[joint.members[k]] = std::move(results[k]);
      }
    }
    record.groups.push_back(std::move(joint));
  }
  return record;
}

ConfidenceReport confidence_from(double mean, double stderr_w,
                                 std::size_t total_shots) {
  ConfidenceReport r;
  r.witness_mean = mean;
  r.stderr_w = stderr_w;
  r.total_shots = total_shots;
  if (stderr_w > 0.0) {
    r.t_value = std::abs(mean) / stderr_w;
    const double z = -mean / stderr_w;
    r.p_value = 0.5 * std::erfc(z / std::sqrt(2.0));
  } else {
    r.t_value = mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    r.p_value = mean < 0.0 ? 0.0 : 1.0;
  }
  r.confidence = 1.0 - r.p_value;
  return r;
}

ConfidenceReport estimate_witness(const PauliDecomposition& decomposition,
                                  const MeasurementRecord& record,
                                  bool include_covariance) {
  if (record.terms.size() != decomposition.terms.size()) {
    throw std::invalid_argument("estimate_witness: record does not match decomposition");
  }
  double mean = decomposition.identity_coefficient();
  double var = 0.0;
  for (std::size_t i = 0; i < decomposition.terms.size(); ++i) {
    const auto& term = decomposition.terms[i];
    if (term.string.is_identity()) continue;
    const auto& rec = record.terms[i];
    if (rec.shots < 2) {
      throw std::invalid_argument("estimate_witness: term " + term.string.to_string() +
                                  " has fewer than 2 shots");
    }
    mean += term.coefficient * rec.mean();
    var += term.coefficient * term.coefficient * rec.variance() /
           static_cast<double>(rec.shots);
  }
  if (include_covariance) {
    for (const auto& g : record.groups) {
      if (g.shots < 2) continue;
      for (std::size_t a = 0; a < g.members.size(); ++a) {
        for (std::size_t b = a + 1; b < g.members.size(); ++b) {
          var += 2.0 * decomposition.terms[g.members[a]].coefficient *
                 decomposition.terms[g.members[b]].coefficient *
                 g.covariance(a, b, record.terms) / static_cast<double>(g.shots);
        }
      }
    }
  }
  return confidence_from(mean, std::sqrt(std::max(var, 0.0)), record.total_shots);
}

std::size_t WitnessExperiment::units(PlanMode mode) const {
  return mode == PlanMode::kGrouped ? plan.size() : decomposition.measured_terms().size();
}

WitnessExperiment prepare_experiment(const SetupGeometry& setup,
                                     const PhysicalParams& params,
                                     std::size_t subsystem, double gamma_hz,
                                     double tau_s, const DensityMatrix* reference,
                                     VertexOrder order) {
  WitnessExperiment e;
  e.rho = decohered_state(phase_table(setup, params), tau_s, gamma_hz);
  e.witness = reference != nullptr
                  ? build_witness(*reference, subsystem, WitnessSource::kFixed)
                  : build_witness(e.rho, subsystem, WitnessSource::kSelf);
  e.decomposition = decompose(e.witness.matrix, setup.n);
  e.plan = group_ldfc(e.decomposition, order);
  e.exact_value = witness_expectation(e.witness, e.rho);
  return e;
}

ConfidenceReport expected_report(const WitnessExperiment& experiment, PlanMode mode,
                                 std::size_t budget) {
  const auto& terms = experiment.decomposition.terms;
  std::vector<std::size_t> shots(terms.size(), 0);
  if (mode == PlanMode::kGrouped) {
    const auto per_group = round_robin(budget, experiment.plan.size());
    for (std::size_t g = 0; g < experiment.plan.size(); ++g) {
      for (std::size_t idx : experiment.plan.groups[g]) shots[idx] = per_group[g];
    }
  } else {
    const auto measured = experiment.decomposition.measured_terms();
    const auto per_term = round_robin(budget, measured.size());
    for (std::size_t u = 0; u < measured.size(); ++u) shots[measured[u]] = per_term[u];
  }
  double var = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].string.is_identity()) continue;
    if (shots[i] == 0) {
      throw std::invalid_argument("expected_report: budget leaves a term unmeasured");
    }
    const double m = pauli_expectation(experiment.rho, terms[i].string);
    var += terms[i].coefficient * terms[i].coefficient * std::max(0.0, 1.0 - m * m) /
           static_cast<double>(shots[i]);
  }
  return confidence_from(experiment.exact_value, std::sqrt(var), budget);
}

std::size_t min_shots_single(const WitnessExperiment& experiment,
                             const MinShotsOptions& options, std::uint64_t seed) {
  const MeasurementPlan* plan =
      options.mode == PlanMode::kGrouped ? &experiment.plan : nullptr;
  const std::size_t units = experiment.units(options.mode);
  if (units == 0) throw std::invalid_argument("min_shots: witness has no measured terms");

  std::uint64_t probe_index = 0;
  auto passes = [&](std::size_t budget) {
    const auto record = run_measurements(experiment.rho, experiment.decomposition, plan,
                                         budget, derive_seed(seed, probe_index++));
    return estimate_witness(experiment.decomposition, record, options.include_covariance)
               .confidence >= options.target;
  };

  std::size_t hi = 2 * units;
  if (passes(hi)) return hi;
  std::size_t lo = hi;
  for (;;) {
    if (hi >= options.max_budget) {
      throw BudgetExceededError("min_shots: target confidence not reached within " +
                                std::to_string(options.max_budget) + " shots");
    }
    lo = hi;
    hi = std::min(2 * hi, options.max_budget);
    if (passes(hi)) break;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

MinShotsResult min_shots_for_confidence(const WitnessExperiment& experiment,
                                        const MinShotsOptions& options) {
  if (!(experiment.exact_value < 0.0)) {
    throw NotCertifiableError("witness expectation " + std::to_string(experiment.exact_value) +
                              " is non-negative: entanglement is not certifiable");
  }
  if (options.seeds.empty()) throw std::invalid_argument("min_shots: no seeds given");
  if (!(options.target > 0.0 && options.target < 1.0)) {
    throw std::invalid_argument("min_shots: target confidence must lie in (0, 1)");
  }
  MinShotsResult result;
  result.witness_value = experiment.exact_value;
  result.per_seed.resize(options.seeds.size());
  parallel_for(options.seeds.size(), options.threads, [&](std::size_t i) {
    result.per_seed[i] = min_shots_single(experiment, options, options.seeds[i]);
  });
  auto sorted = result.per_seed;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size();
  result.median_shots = k % 2 == 1 ? sorted[k / 2]
                                   : (sorted[k / 2 - 1] + sorted[k / 2] + 1) / 2;
  return result;
}

MinShotsResult min_shots_for_confidence(const SetupGeometry& setup,
                                        const PhysicalParams& params,
                                        std::size_t subsystem, double gamma_hz,
                                        double tau_s, const MinShotsOptions& options) {
  return min_shots_for_confidence(
      prepare_experiment(setup, params, subsystem, gamma_hz, tau_s), options);
}

}  // namespace qgem
