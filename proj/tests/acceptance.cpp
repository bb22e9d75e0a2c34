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


// Acceptance suite: prints one PASS/FAIL line per criterion. `--criterion N`
// runs a single criterion. The exit status is non-zero if any selected
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qgem/decoherence_rate.hpp"
#include "qgem/entanglement.hpp"
#include "qgem/experiment.hpp"
#include "qgem/geometry.hpp"
#include "qgem/pauli.hpp"
#include "qgem/state.hpp"
#include "test_util.hpp"

using namespace qgem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
    ++total_;
  }
  Outcome finish(const std::string& summary) const {
    std::ostringstream os;
    os << summary << " (" << total_ - failures_.size() << "/" << total_ << " checks)";
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) os << "; " << failures_[i];
    if (failures_.size() > 3) os << "; ...";
    return {pass_, os.str()};
  }

 private:
  bool pass_ = true;
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

constexpr double kTau = 2.5;

DensityMatrix state_at(SetupKind kind, std::size_t n, std::size_t levels, double gamma,
                       double tau = kTau) {
  return decohered_state(phase_table(build_setup(kind, n, levels)), tau, gamma);
}

// Middle particle of a triple, second particle of a pair.
std::size_t witness_subsystem(std::size_t) { return 1; }

double self_witness(std::size_t n, std::size_t levels, double gamma) {
  const auto rho = state_at(SetupKind::kParallel, n, levels, gamma);
  return witness_expectation(build_witness(rho, witness_subsystem(n)), rho);
}

bool within(double value, double expected, double tol) {
  return std::abs(value - expected) <= tol;
}

// Smallest gamma at which the self-witness stops being negative.
double zero_crossing(std::size_t n, std::size_t levels) {
  double lo = 0.0;
  double hi = 0.05;
  while (self_witness(n, levels, hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    (self_witness(n, levels, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome criterion_1() {
  Checker c;
  const double w2 = self_witness(2, 2, 0.0);
  const double w3 = self_witness(3, 2, 0.0);
  c.expect(within(w2, -0.146, 0.005), "n=2 " + fmt("%.4f", w2));
  c.expect(within(w3, -0.202, 0.005), "n=3 " + fmt("%.4f", w3));
  return c.finish("W(n=2)=" + fmt("%.4f", w2) + " W(n=3)=" + fmt("%.4f", w3));
}

Outcome criterion_2() {
  Checker c;
  const std::vector<std::tuple<std::size_t, double, double>> cells = {
      {2, 0.025, -0.108}, {2, 0.05, -0.074}, {2, 0.075, -0.043}, {2, 0.1, -0.016},
      {3, 0.025, -0.156}, {3, 0.05, -0.117}, {3, 0.075, -0.084}, {3, 0.1, -0.055},
      {3, 0.125, -0.030}, {3, 0.15, -0.008}};
  double worst = 0.0;
  for (const auto& [n, gamma, expected] : cells) {
    const double w = self_witness(n, 2, gamma);
    worst = std::max(worst, std::abs(w - expected));
    c.expect(within(w, expected, 0.005),
             "n=" + std::to_string(n) + " gamma=" + fmt("%g", gamma) + " " + fmt("%.4f", w));
  }
  return c.finish("max deviation " + fmt("%.4f", worst));
}

Outcome criterion_3() {
  Checker c;
  const double z2 = zero_crossing(2, 2);
  const double z3 = zero_crossing(3, 2);
  c.expect(z2 > 0.11 && z2 < 0.13, "n=2 crossing " + fmt("%.4f", z2));
  c.expect(z3 > 0.15 && z3 < 0.17, "n=3 crossing " + fmt("%.4f", z3));
  return c.finish("crossings n=2 " + fmt("%.4f", z2) + " Hz, n=3 " + fmt("%.4f", z3) + " Hz");
}

Outcome criterion_4() {
  Checker c;
  struct Row {
    const char* name;
    SetupKind kind;
    std::size_t n, ops, groups;
  };
  const Row rows[] = {{"2-par", SetupKind::kParallel, 2, 4, 3},
                      {"2-lin", SetupKind::kLinear, 2, 9, 8},
                      {"3-par", SetupKind::kParallel, 3, 26, 12},
                      {"3-lin", SetupKind::kLinear, 3, 47, 22},
                      {"3-star", SetupKind::kStar, 3, 56, 26}};
  std::string summary;
  for (const auto& r : rows) {
    const auto counts =
        operator_counts(build_setup(r.kind, r.n, 2), witness_subsystem(r.n), 0.0, kTau);
    const std::string cell = std::string(r.name) + "=(" + std::to_string(counts.num_operators) +
                             "," + std::to_string(counts.num_groups) + ")";
    c.expect(counts.num_operators == r.ops && counts.num_groups == r.groups, cell);
    summary += (summary.empty() ? "" : " ") + cell;
  }
  return c.finish(summary);
}

Outcome criterion_5() {
  Checker c;
  const std::set<std::set<std::string>> expected = {
      {"IIX", "IXX", "XII", "XXI", "XXX"}, {"IYY", "YIY", "YYI"}, {"IYZ", "XYZ"},
      {"IZY", "XZY"}, {"YIZ", "YXZ"}, {"YZI", "YZX"}, {"ZIY", "ZXY"}, {"ZIZ", "ZXZ"},
      {"ZYI", "ZYX"}, {"XZZ"}, {"YXY"}, {"ZZX"}};
  const auto rho = state_at(SetupKind::kParallel, 3, 2, 0.0);
  const auto d = decompose(build_witness(rho, 1).matrix, 3);
  const auto plan = group_ldfc(d);
  std::set<std::set<std::string>> ours;
  std::set<std::string> first;
  for (std::size_t g = 0; g < plan.size(); ++g) {
    std::set<std::string> members;
    for (auto idx : plan.groups[g]) members.insert(d.terms[idx].string.to_string());
    if (g == 0) first = members;
    ours.insert(members);
  }
  c.expect(plan.size() == 12, std::to_string(plan.size()) + " groups");
  c.expect(ours == expected, "partition differs from the expected one");
  c.expect(first == *expected.begin(), "group 1 differs");
  return c.finish(std::to_string(plan.size()) + " groups, partition " +
                  (ours == expected ? "identical" : "different"));
}

// Median minimal shots, memoised across criteria 6 and 7.
std::size_t median_shots(std::size_t n, PlanMode mode, double gamma) {
  static std::map<std::tuple<std::size_t, int, double>, std::size_t> cache;
  const auto key = std::make_tuple(n, static_cast<int>(mode), gamma);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  MinShotsOptions opts;
  opts.mode = mode;
  const auto result = min_shots_for_confidence(build_setup(SetupKind::kParallel, n, 2), {},
                                               witness_subsystem(n), gamma, kTau, opts);
  cache[key] = result.median_shots;
  return result.median_shots;
}

Outcome criterion_6() {
  Checker c;
  struct Cell {
    std::size_t n;
    PlanMode mode;
    double gamma;
    double expected;
  };
  const std::vector<Cell> cells = {
      {2, PlanMode::kUngrouped, 0.025, 1000},   {2, PlanMode::kUngrouped, 0.05, 1500},
      {2, PlanMode::kUngrouped, 0.075, 5000},   {2, PlanMode::kUngrouped, 0.1, 37500},
      {3, PlanMode::kUngrouped, 0.025, 1500},   {3, PlanMode::kUngrouped, 0.05, 3000},
      {3, PlanMode::kUngrouped, 0.075, 5500},   {3, PlanMode::kUngrouped, 0.1, 13000},
      {3, PlanMode::kUngrouped, 0.125, 42500},  {3, PlanMode::kUngrouped, 0.15, 750000},
      {2, PlanMode::kGrouped, 0.025, 580},      {2, PlanMode::kGrouped, 0.05, 1250},
      {2, PlanMode::kGrouped, 0.075, 3900},     {2, PlanMode::kGrouped, 0.1, 29200},
      {3, PlanMode::kGrouped, 0.025, 640},      {3, PlanMode::kGrouped, 0.05, 1390},
      {3, PlanMode::kGrouped, 0.075, 2900},     {3, PlanMode::kGrouped, 0.1, 6500},
      {3, PlanMode::kGrouped, 0.125, 22400},    {3, PlanMode::kGrouped, 0.15, 312000}};
  std::size_t inside = 0;
  double worst = 1.0;
  for (const auto& cell : cells) {
    const auto shots = static_cast<double>(median_shots(cell.n, cell.mode, cell.gamma));
    const double ratio = std::max(shots / cell.expected, cell.expected / shots);
    worst = std::max(worst, ratio);
    const bool ok = ratio <= 2.0;
    inside += ok;
    const std::string label = "n=" + std::to_string(cell.n) + " " +
                              std::string(to_string(cell.mode)) + " " + fmt("%g", cell.gamma) +
                              " Hz: " + fmt("%.0f", shots) + " vs " + fmt("%.0f", cell.expected);
    std::cerr << "  " << (ok ? "ok   " : "off  ") << label << " (x" << fmt("%.2f", ratio)
              << ")\n";
    c.expect(ok, label);
  }
  return c.finish(std::to_string(inside) + "/" + std::to_string(cells.size()) +
                  " cells within x2, worst ratio x" + fmt("%.2f", worst));
}

Outcome criterion_7() {
  Checker c;
  std::string summary;
  for (auto mode : {PlanMode::kUngrouped, PlanMode::kGrouped}) {
    const auto hi2 = median_shots(2, mode, 0.1);
    const auto hi3 = median_shots(3, mode, 0.1);
    const auto lo2 = median_shots(2, mode, 0.025);
    const auto lo3 = median_shots(3, mode, 0.025);
    const std::string m(to_string(mode));
    c.expect(hi3 < hi2, m + " 0.1 Hz: n3 " + std::to_string(hi3) + " !< n2 " +
                            std::to_string(hi2));
    c.expect(lo2 < lo3, m + " 0.025 Hz: n2 " + std::to_string(lo2) + " !< n3 " +
                            std::to_string(lo3));
    summary += m + " [0.1: " + std::to_string(hi3) + "<" + std::to_string(hi2) +
               ", 0.025: " + std::to_string(lo2) + "<" + std::to_string(lo3) + "] ";
  }
  summary.pop_back();
  return c.finish(summary);
}

Outcome criterion_8() {
  Checker c;
  EnvironmentParams cold;
  cold.temperature_env_k = 0.15;
  EnvironmentParams warm = cold;
  warm.temperature_env_k = 1.0;
  EnvironmentParams mid = cold;
  mid.temperature_env_k = 0.5;
  const double air_cold = gamma_air(cold).gamma_hz;
  const double air_warm = gamma_air(warm).gamma_hz;
  const double bb_cold = gamma_total(cold).gamma_bb_hz;
  const double total_mid = gamma_total(mid).gamma_total_hz;
  c.expect(within(air_cold, 0.03, 0.3 * 0.03), "Gamma_air(0.15 K)");
  c.expect(within(air_warm, 0.07, 0.3 * 0.07), "Gamma_air(1 K)");
  c.expect(within(bb_cold, 4e-10, 0.5 * 4e-10), "Gamma_bb(0.15 K)");
  c.expect(total_mid >= 0.05, "gamma(0.5 K)");
  return c.finish("Gamma_air(0.15 K)=" + fmt("%.4g", air_cold) + " Gamma_air(1 K)=" +
                  fmt("%.4g", air_warm) + " Gamma_bb(0.15 K)=" + fmt("%.3g", bb_cold) +
                  " gamma(0.5 K)=" + fmt("%.4g", total_mid));
}

Outcome criterion_9() {
  Checker c;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> gamma_dist(0.0, 0.3);
  std::uniform_real_distribution<double> tau_dist(0.0, 6.0);
  struct Layout {
    SetupKind kind;
    std::size_t n;
  };
  const Layout layouts[] = {{SetupKind::kParallel, 2}, {SetupKind::kLinear, 2},
                            {SetupKind::kParallel, 3}, {SetupKind::kLinear, 3},
                            {SetupKind::kStar, 3}};

  double witness_err = 0.0;
  double roundtrip_err = 0.0;
  std::size_t invalid_plans = 0;
  for (int point = 0; point < 200; ++point) {
    const auto& layout = layouts[point % 5];
    const std::size_t sub = rng() % layout.n;
    const auto rho = state_at(layout.kind, layout.n, 2, gamma_dist(rng), tau_dist(rng));
    const auto w = build_witness(rho, sub);
    const auto oracle = testing::eigen_spectrum(
        testing::oracle_partial_transpose_qubits(rho.matrix, layout.n, sub));
    witness_err = std::max(witness_err, std::abs(witness_expectation(w, rho) - oracle.front()));
    // The transform itself is checked unthresholded; plans use the default cut.
    const auto full = decompose(w.matrix, layout.n, 0.0);
    roundtrip_err = std::max(roundtrip_err, full.reconstruct().max_abs_diff(w.matrix));
    const auto d = decompose(w.matrix, layout.n);
    for (auto order : {VertexOrder::kTermOrder, VertexOrder::kLargestDegreeFirst})
      invalid_plans += !plan_is_valid(d, group_ldfc(d, order));
  }
  c.expect(witness_err <= 1e-9, "self-witness error " + fmt("%.2e", witness_err));
  c.expect(roundtrip_err <= 1e-10, "round trip error " + fmt("%.2e", roundtrip_err));
  c.expect(invalid_plans == 0, std::to_string(invalid_plans) + " invalid plans");

  double involution_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::size_t> dims = trial % 2 ? std::vector<std::size_t>{2, 3, 2}
                                                    : std::vector<std::size_t>{3, 3};
    const auto rho = testing::random_density(hilbert_dim(dims), rng);
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const auto twice = partial_transpose(partial_transpose(rho, dims, s), dims, s);
      involution_err = std::max(involution_err, twice.max_abs_diff(rho));
    }
  }
  c.expect(involution_err == 0.0, "involution error " + fmt("%.2e", involution_err));

  double min_eig = 1.0;
  double compose_err = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto pure = state_at(SetupKind::kParallel, 3, 2, 0.0, tau_dist(rng));
    const DecoherenceSpec a{gamma_dist(rng), tau_dist(rng)};
    const DecoherenceSpec b{a.gamma_hz, tau_dist(rng)};
    const auto once = apply_decoherence(pure, a);
    min_eig = std::min(min_eig, eig_hermitian(once.matrix).eigenvalues.front());
    const auto split = apply_decoherence(once, b);
    const auto joint = apply_decoherence(pure, {a.gamma_hz, a.tau_s + b.tau_s});
    compose_err = std::max(compose_err, split.matrix.max_abs_diff(joint.matrix));
  }
  c.expect(min_eig >= -1e-12, "channel min eigenvalue " + fmt("%.2e", min_eig));
  c.expect(compose_err <= 1e-12, "composition error " + fmt("%.2e", compose_err));

  double symmetry_err = 0.0;
  for (auto kind : {SetupKind::kParallel, SetupKind::kLinear}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = state_at(kind, 3, 2, 0.0, tau_dist(rng));
      const std::size_t first[] = {0};
      const std::size_t last[] = {2};
      symmetry_err = std::max(symmetry_err, std::abs(entanglement_entropy(rho, first) -
                                                     entanglement_entropy(rho, last)));
    }
  }
  c.expect(symmetry_err <= 1e-10, "S1 vs S3 " + fmt("%.2e", symmetry_err));

  double worst_bias = 0.0;
  for (auto mode : {PlanMode::kUngrouped, PlanMode::kGrouped}) {
    const auto exp =
        prepare_experiment(build_setup(SetupKind::kParallel, 3, 2), {}, 1, 0.05, kTau);
    const std::size_t seeds = 32;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t s = 0; s < seeds; ++s) {
      const auto record =
          run_measurements(exp.rho, exp.decomposition,
                           mode == PlanMode::kGrouped ? &exp.plan : nullptr, 100000,
                           derive_seed(99, s));
      const double m = estimate_witness(exp.decomposition, record).witness_mean;
      sum += m;
      sum_sq += m * m;
    }
    const double mean = sum / seeds;
    const double se = std::sqrt((sum_sq - seeds * mean * mean) / (seeds - 1) / seeds);
    const double bias = std::abs(mean - exp.exact_value) / se;
    worst_bias = std::max(worst_bias, bias);
    c.expect(bias < 3.0, std::string(to_string(mode)) + " bias " + fmt("%.2f", bias) + " sigma");
  }
  return c.finish("witness " + fmt("%.1e", witness_err) + ", round trip " +
                  fmt("%.1e", roundtrip_err) + ", bias " + fmt("%.2f", worst_bias) + " sigma");
}

Outcome criterion_10() {
  Checker c;
  const double q26 = zero_crossing(2, 6);
  const double q32 = zero_crossing(3, 2);
  const double q36 = zero_crossing(3, 6);
  c.expect(std::abs(q26 - q32) <= 0.02, "n=2 D=6 vs n=3 D=2 differ by " + fmt("%.4f", q26 - q32));
  c.expect(q36 > q26 && q36 > q32, "n=3 D=6 crossing is not the largest");
  return c.finish("crossings (2,6)=" + fmt("%.4f", q26) + " (3,2)=" + fmt("%.4f", q32) +
                  " (3,6)=" + fmt("%.4f", q36) + " Hz");
}

struct Criterion {
  int id;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, 1.0, criterion_1},    {2, 5.0, criterion_2},   {3, 5.0, criterion_3},
      {4, 10.0, criterion_4},   {5, 1.0, criterion_5},   {6, 1800.0, criterion_6},
      {7, 600.0, criterion_7},  {8, 1.0, criterion_8},   {9, 120.0, criterion_9},
      {10, 60.0, criterion_10}};

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "criterion must be 1.." << criteria.size() << "\n";
    return 2;
  }

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= criterion.limit_s;
    const bool pass = outcome.pass && in_time;
    all_pass = all_pass && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion.id << ": "
              << outcome.detail << " [" << fmt("%.2f", elapsed) << " s, limit "
              << fmt("%g", criterion.limit_s) << " s" << (in_time ? "" : ", too slow")
              << "]" << std::endl;
  }
  return all_pass ? 0 : 1;
}
