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

#include <doctest.h>

#include <cmath>
#include <random>

#include "qgem/geometry.hpp"
#include "qgem/state.hpp"
#include "test_util.hpp"

using namespace qgem;
using namespace qgem::testing;

TEST_SUITE("state") {
  TEST_CASE("initial state amplitudes are uniform") {
    const auto s2 = initial_state(2, 2);
    for (auto a : s2.amplitudes) CHECK(a == Complex(0.5));
    const auto s3 = initial_state(3, 2);
    for (auto a : s3.amplitudes) CHECK(a.real() == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
    const auto q = initial_state(2, 3);
    CHECK(q.amplitudes.size() == 9);
    for (auto a : q.amplitudes) CHECK(a.real() == doctest::Approx(1.0 / 3.0));
    CHECK(q.norm() == doctest::Approx(1.0));
  }

  TEST_CASE("evolution at zero time is the identity") {
    const auto table = phase_table(build_setup(SetupKind::kParallel, 3, 2));
    const auto s = initial_state(3, 2);
    CHECK(evolve(s, table, 0.0).amplitudes == s.amplitudes);
  }

  TEST_CASE("equal rates only add a global phase") {
    BranchPhaseTable flat{2, 2, {0.7, 0.7, 0.7, 0.7}};
    const auto e = evolve(initial_state(2, 2), flat, 3.0);
    const Complex phase = e.amplitudes[0] / std::abs(e.amplitudes[0]);
    for (auto a : e.amplitudes) CHECK(std::abs(a - 0.5 * phase) < 1e-15);
  }

  TEST_CASE("entangling phase of the parallel pair") {
    const PhysicalParams p;
    const auto table = phase_table(build_setup(SetupKind::kParallel, 2, 2), p);
    const auto e = evolve(initial_state(2, 2), table, p.tau_s);
    CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // arg(a00 a11 / (a01 a10)) = (phi00 + phi11 - phi01 - phi10) tau.
    const Complex ratio = e.amplitudes[0] * e.amplitudes[3] / (e.amplitudes[1] * e.amplitudes[2]);
    const double k = p.G * p.mass_kg * p.mass_kg / p.hbar;
    const double by_hand = 2.0 * k * (1.0 / 200e-6 - 1.0 / std::hypot(200e-6, 250e-6)) * p.tau_s;
    CHECK(std::arg(ratio) == doctest::Approx(by_hand).epsilon(1e-12));
    CHECK(by_hand == doctest::Approx(0.594).epsilon(1e-3));
  }

  TEST_CASE("pure density matrices") {
    const auto rho0 = density_matrix(initial_state(2, 2));
    for (auto z : rho0.matrix.entries()) CHECK(z == Complex(0.25));
    const auto table = phase_table(build_setup(SetupKind::kParallel, 3, 2));
    const auto psi = evolve(initial_state(3, 2), table, 2.5);
    const auto rho = density_matrix(psi);
    CHECK(std::abs((rho.matrix * rho.matrix).trace() - 1.0) < 1e-10);
    const auto spectrum = eigen_spectrum(rho.matrix);
    CHECK(spectrum.back() == doctest::Approx(1.0));
    for (std::size_t k = 0; k + 1 < spectrum.size(); ++k) CHECK(std::abs(spectrum[k]) < 1e-10);
    // Entries (1/D^n) exp(i (phi_b - phi_b') tau).
    for (std::size_t r = 0; r < 8; ++r) {
      for (std::size_t c = 0; c < 8; ++c) {
        const Complex expected =
            std::polar(1.0 / 8.0, (table.rates[r] - table.rates[c]) * 2.5);
        CHECK(std::abs(rho.matrix(r, c) - expected) < 1e-15);
      }
    }
  }

  TEST_CASE("differing particle count") {
    CHECK(differing_particles(0, 7, 3, 2) == 3);
    CHECK(differing_particles(5, 5, 3, 2) == 0);
    CHECK(differing_particles(1, 2, 2, 2) == 2);
    // Qutrits: 21 = (2,1,0), 19 = (2,0,1) differ on particles 2 and 3.
    CHECK(differing_particles(21, 19, 3, 3) == 2);
  }

  TEST_CASE("dephasing factors") {
    const auto table = phase_table(build_setup(SetupKind::kParallel, 3, 2));
    const auto rho = density_matrix(evolve(initial_state(3, 2), table, 2.5));
    CHECK(apply_decoherence(rho, {0.0, 2.5}).matrix == rho.matrix);
    const auto deco = apply_decoherence(rho, {0.1, 2.5});
    CHECK(std::abs(deco.matrix(0, 7) - rho.matrix(0, 7) * std::exp(-3 * 0.1 * 2.5)) < 1e-16);
    CHECK(std::abs(deco.matrix(0, 1) - rho.matrix(0, 1) * std::exp(-0.1 * 2.5)) < 1e-16);
    for (std::size_t b = 0; b < 8; ++b) CHECK(deco.matrix(b, b) == rho.matrix(b, b));
    const auto mixed = apply_decoherence(rho, {1e3, 1e3});
    CHECK(mixed.matrix.max_abs_diff(ComplexMatrix::identity(8) * Complex(1.0 / 8.0)) < 1e-15);
    CHECK_THROWS(apply_decoherence(rho, {-0.1, 1.0}));
    CHECK_THROWS(apply_decoherence(rho, {0.1, -1.0}));
  }

  TEST_CASE("dephasing composes additively in time") {
    const auto table = phase_table(build_setup(SetupKind::kLinear, 3, 2));
    const auto rho = density_matrix(evolve(initial_state(3, 2), table, 1.0));
    const auto twice = apply_decoherence(apply_decoherence(rho, {0.07, 0.8}), {0.07, 1.7});
    const auto once = apply_decoherence(rho, {0.07, 2.5});
    CHECK(twice.matrix.max_abs_diff(once.matrix) < 1e-15);
  }

  TEST_CASE("fused closed form equals the step-by-step pipeline") {
    for (std::size_t levels : {2u, 3u}) {
      const auto table = phase_table(build_setup(SetupKind::kParallel, 2, levels));
      for (double gamma : {0.0, 0.05, 0.2}) {
        const auto fused = decohered_state(table, 2.5, gamma);
        const auto steps = apply_decoherence(
            density_matrix(evolve(initial_state(2, levels), table, 2.5)), {gamma, 2.5});
        CHECK(fused.matrix.max_abs_diff(steps.matrix) < 1e-14);
      }
    }
  }

  TEST_CASE("dephased states stay physical") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> gamma(0.0, 0.5);
    std::uniform_real_distribution<double> tau(0.0, 10.0);
    for (auto kind : {SetupKind::kParallel, SetupKind::kLinear, SetupKind::kStar}) {
      const auto table = phase_table(build_setup(kind, 3, 2));
      for (int trial = 0; trial < 10; ++trial) {
        const auto rho = decohered_state(table, tau(rng), gamma(rng));
        CHECK(rho.matrix.is_hermitian());
        CHECK(std::abs(rho.matrix.trace() - 1.0) < 1e-12);
        CHECK(eigen_spectrum(rho.matrix).front() >= -1e-10);
      }
    }
  }
}
