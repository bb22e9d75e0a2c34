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
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qgem/entanglement.hpp"
#include "qgem/geometry.hpp"
#include "qgem/pauli.hpp"
#include "qgem/state.hpp"

namespace qgem {

/// The self-witness of the requested state is non-negative, so no finite
/// number of shots can certify entanglement.
class NotCertifiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit Mersenne Twister with a platform-independent uniform draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// splitmix64 mix of (base, stream); distinct streams give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Shot statistics of one Pauli string. Outcomes are +-1.
struct TermRecord {
  PauliString string;
  std::size_t shots = 0;
  std::int64_t outcome_sum = 0;

  double mean() const;
  /// Unbiased sample variance; 0 below two shots.
  double variance() const;
};

/// Joint statistics of one jointly measured group, kept so within-group
/// covariances can be estimated.
struct GroupRecord {
  /// Indices into MeasurementRecord::terms.
  std::vector<std::size_t> members;
  std::size_t shots = 0;
  /// Sum over shots of x_a * x_b for member pairs a < b, row-major over the
  /// strict upper triangle.
  std::vector<std::int64_t> pair_sums;

  /// Unbiased sample covariance of members `a` and `b` (local indices).
  double covariance(std::size_t a, std::size_t b,
                    std::span<const TermRecord> terms) const;
};

enum class PlanMode { kUngrouped, kGrouped };

std::string_view to_string(PlanMode mode);
PlanMode parse_plan_mode(std::string_view name);

struct MeasurementRecord {
  /// Aligned with PauliDecomposition::terms; the identity keeps zero shots.
  std::vector<TermRecord> terms;
  /// Filled in grouped mode only.
  std::vector<GroupRecord> groups;
  std::uint64_t rng_seed = 0;
  std::size_t total_shots = 0;
};

struct ConfidenceReport {
  double witness_mean = 0.0;
  double stderr_w = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
  double confidence = 0.0;
  std::size_t total_shots = 0;
};

/// Tr(P rho) for a qubit state.
double pauli_expectation(const DensityMatrix& rho, const PauliString& p);

/// Draws `shots` outcomes with Pr(+1) = (1 + Tr(P rho)) / 2.
TermRecord sample_term(const DensityMatrix& rho, const PauliString& p,
                       std::size_t shots, Rng& rng);

/// Measures every particle in the group's shared local basis `shots` times.
/// Each member's outcome is the product of the single-particle results on its
/// non-identity positions. Throws if the members do not pairwise qwc.
/// When `joint` is non-null its pair sums are filled.
std::vector<TermRecord> sample_group(const DensityMatrix& rho,
                                     std::span<const PauliString> members,
                                     std::size_t shots, Rng& rng,
                                     GroupRecord* joint = nullptr);

/// Shots per unit for a round-robin split of `budget` over `units`
/// (remainder to the earliest units).
std::vector<std::size_t> round_robin(std::size_t budget, std::size_t units);

/// Spends `budget` shots on the decomposition: per term when `plan` is null,
/// per group otherwise.
MeasurementRecord run_measurements(const DensityMatrix& rho,
                                   const PauliDecomposition& decomposition,
                                   const MeasurementPlan* plan,
                                   std::size_t budget, std::uint64_t seed);

/// One-sided test of H0: <W> >= 0 from the estimate and its standard error.
ConfidenceReport confidence_from(double mean, double stderr_w,
                                 std::size_t total_shots);

/// mean = c_I + sum c_P mean_P; s_W^2 = sum c_P^2 var_P / shots_P, plus the
/// within-group covariance terms when requested and available.
ConfidenceReport estimate_witness(const PauliDecomposition& decomposition,
                                  const MeasurementRecord& record,
                                  bool include_covariance = false);

/// Everything needed to sample one (setup, gamma, tau) point.
struct WitnessExperiment {
  DensityMatrix rho;
  WitnessOperator witness;
  PauliDecomposition decomposition;
  MeasurementPlan plan;
  double exact_value = 0.0;

  std::size_t units(PlanMode mode) const;
};

/// Builds the state at (gamma, tau) and its self-witness (or the witness of
/// `reference` when given).
WitnessExperiment prepare_experiment(const SetupGeometry& setup,
                                     const PhysicalParams& params,
                                     std::size_t subsystem, double gamma_hz,
                                     double tau_s,
                                     const DensityMatrix* reference = nullptr,
                                     VertexOrder order = VertexOrder::kTermOrder);

/// Large-sample prediction at `budget`: exact mean, and
/// s_W^2 = sum c_P^2 (1 - <P>^2) / shots_P under round-robin allocation.
ConfidenceReport expected_report(const WitnessExperiment& experiment, PlanMode mode,
                                 std::size_t budget);

struct MinShotsOptions {
  PlanMode mode = PlanMode::kUngrouped;
  double target = 0.999;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  std::size_t max_budget = 200'000'000;
  bool include_covariance = false;
  /// Worker threads for the seed loop; 0 picks hardware concurrency.
  std::size_t threads = 0;
};

struct MinShotsResult {
  std::size_t median_shots = 0;
  std::vector<std::size_t> per_seed;
  double witness_value = 0.0;
};

/// Smallest budget reaching `target` for one seed: doubling from two shots per
/// unit to bracket, then bisection; every probe draws fresh samples.
std::size_t min_shots_single(const WitnessExperiment& experiment,
                             const MinShotsOptions& options, std::uint64_t seed);

/// Median over options.seeds of min_shots_single. Throws NotCertifiableError
/// when the witness expectation is non-negative.
MinShotsResult min_shots_for_confidence(const WitnessExperiment& experiment,
                                        const MinShotsOptions& options);

MinShotsResult min_shots_for_confidence(const SetupGeometry& setup,
                                        const PhysicalParams& params,
                                        std::size_t subsystem, double gamma_hz,
                                        double tau_s,
                                        const MinShotsOptions& options = {});

}  // namespace qgem
