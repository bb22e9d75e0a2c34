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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgem/decoherence_rate.hpp"
#include "qgem/entanglement.hpp"
#include "qgem/experiment.hpp"
#include "qgem/geometry.hpp"
#include "qgem/linalg.hpp"
#include "qgem/pauli.hpp"
#include "qgem/state.hpp"

namespace py = pybind11;

namespace {

using CArray = py::array_t<qgem::Complex, py::array::c_style | py::array::forcecast>;

qgem::ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw std::invalid_argument("expected a square 2-D array");
  }
  const auto dim = static_cast<std::size_t>(a.shape(0));
  return qgem::ComplexMatrix(dim, std::vector<qgem::Complex>(a.data(), a.data() + dim * dim));
}

CArray to_array(const qgem::ComplexMatrix& m) {
  const auto dim = static_cast<py::ssize_t>(m.dim());
  CArray out({dim, dim});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

qgem::DensityMatrix to_density(const CArray& a, std::size_t n, std::size_t levels) {
  return {n, levels, to_matrix(a)};
}

qgem::SetupGeometry setup_of(const std::string& kind, std::size_t n, std::size_t levels,
                             const qgem::PhysicalParams& params) {
  return qgem::build_setup(qgem::parse_setup_kind(kind), n, levels, params);
}

}  // namespace

PYBIND11_MODULE(_qgem, m) {
  m.doc() = "Simulator for gravitationally induced entanglement of n masses";

  py::register_exception<qgem::NotCertifiableError>(m, "NotCertifiableError");
  py::register_exception<qgem::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<qgem::PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readwrite("mass_kg", &qgem::PhysicalParams::mass_kg)
      .def_readwrite("d_min_m", &qgem::PhysicalParams::d_min_m)
      .def_readwrite("delta_x_m", &qgem::PhysicalParams::delta_x_m)
      .def_readwrite("tau_s", &qgem::PhysicalParams::tau_s)
      .def_readwrite("G", &qgem::PhysicalParams::G)
      .def_readwrite("hbar", &qgem::PhysicalParams::hbar);

  m.def("tensor", [](const CArray& a, const CArray& b) {
    return to_array(qgem::tensor(to_matrix(a), to_matrix(b)));
  });
  m.def(
      "partial_trace",
      [](const CArray& rho, std::vector<std::size_t> dims, std::vector<std::size_t> keep) {
        return to_array(qgem::partial_trace(to_matrix(rho), dims, keep));
      },
      py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def(
      "partial_transpose",
      [](const CArray& rho, std::vector<std::size_t> dims, std::size_t subsystem) {
        return to_array(qgem::partial_transpose(to_matrix(rho), dims, subsystem));
      },
      py::arg("rho"), py::arg("dims"), py::arg("subsystem"));
  m.def(
      "eig_hermitian",
      [](const CArray& a) {
        const auto eig = qgem::eig_hermitian(to_matrix(a));
        // Explicit strides; the count-only constructor yields a zero stride here.
        const py::array_t<double> values({static_cast<py::ssize_t>(eig.eigenvalues.size())},
                                         {static_cast<py::ssize_t>(sizeof(double))},
                                         eig.eigenvalues.data());
        return py::make_tuple(values, to_array(eig.eigenvectors));
      },
      "Ascending eigenvalues and eigenvectors as columns.");

  m.def(
      "density_matrix",
      [](const std::string& kind, std::size_t n, std::size_t levels, double gamma,
         double tau, const qgem::PhysicalParams& params) {
        const auto setup = setup_of(kind, n, levels, params);
        return to_array(qgem::decohered_state(qgem::phase_table(setup, params), tau, gamma).matrix);
      },
      py::arg("kind") = "parallel", py::arg("n") = 3, py::arg("levels") = 2,
      py::arg("gamma") = 0.0, py::arg("tau") = 2.5, py::arg("params") = qgem::PhysicalParams{});

  m.def(
      "entanglement_entropy",
      [](const CArray& rho, std::size_t n, std::size_t levels, std::vector<std::size_t> keep) {
        return qgem::entanglement_entropy(to_density(rho, n, levels), keep);
      },
      py::arg("rho"), py::arg("n"), py::arg("levels"), py::arg("keep"));
  m.def(
      "ppt_min_eigenvalue",
      [](const CArray& rho, std::size_t n, std::size_t levels, std::size_t subsystem) {
        return qgem::ppt_min_eigenpair(to_density(rho, n, levels), subsystem).value;
      },
      py::arg("rho"), py::arg("n"), py::arg("levels"), py::arg("subsystem"));
  m.def(
      "witness_matrix",
      [](const CArray& reference, std::size_t n, std::size_t levels, std::size_t subsystem) {
        return to_array(qgem::build_witness(to_density(reference, n, levels), subsystem).matrix);
      },
      py::arg("reference"), py::arg("n"), py::arg("levels"), py::arg("subsystem"));
  m.def(
      "witness_value",
      [](const std::string& kind, std::size_t n, std::size_t levels, double gamma, double tau,
         std::size_t subsystem, const qgem::PhysicalParams& params) {
        const auto setup = setup_of(kind, n, levels, params);
        const auto rho = qgem::decohered_state(qgem::phase_table(setup, params), tau, gamma);
        return qgem::witness_expectation(qgem::build_witness(rho, subsystem), rho);
      },
      py::arg("kind") = "parallel", py::arg("n") = 3, py::arg("levels") = 2,
      py::arg("gamma") = 0.0, py::arg("tau") = 2.5, py::arg("subsystem") = 1,
      py::arg("params") = qgem::PhysicalParams{});

  m.def(
      "decompose",
      [](const CArray& op, std::size_t n, double threshold) {
        std::vector<std::pair<std::string, double>> terms;
        for (const auto& t : qgem::decompose(to_matrix(op), n, threshold).terms) {
          terms.emplace_back(t.string.to_string(), t.coefficient);
        }
        return terms;
      },
      py::arg("op"), py::arg("n"), py::arg("threshold") = qgem::kDefaultZeroThreshold,
      "(pauli, coefficient) pairs in lexicographic order.");
  m.def(
      "group_operators",
      [](const std::string& kind, std::size_t n, double gamma, double tau,
         std::size_t subsystem) {
        const qgem::PhysicalParams params;
        const auto e =
            qgem::prepare_experiment(setup_of(kind, n, 2, params), params, subsystem, gamma, tau);
        std::vector<std::vector<std::string>> groups;
        for (const auto& g : e.plan.groups) {
          auto& out = groups.emplace_back();
          for (std::size_t idx : g) out.push_back(e.decomposition.terms[idx].string.to_string());
        }
        return py::make_tuple(e.decomposition.terms.size(), groups);
      },
      py::arg("kind") = "parallel", py::arg("n") = 3, py::arg("gamma") = 0.0,
      py::arg("tau") = 2.5, py::arg("subsystem") = 1,
      "(number of operators including identity, list of groups).");
  m.def(
      "min_shots",
      [](const std::string& kind, std::size_t n, double gamma, double tau,
         const std::string& mode, std::size_t subsystem, std::vector<std::uint64_t> seeds,
         double target) {
        const qgem::PhysicalParams params;
        qgem::MinShotsOptions options;
        options.mode = qgem::parse_plan_mode(mode);
        options.seeds = std::move(seeds);
        options.target = target;
        qgem::MinShotsResult r;
        {
          py::gil_scoped_release release;
          r = qgem::min_shots_for_confidence(setup_of(kind, n, 2, params), params, subsystem,
                                             gamma, tau, options);
        }
        py::dict d;
        d["median"] = r.median_shots;
        d["per_seed"] = r.per_seed;
        d["witness"] = r.witness_value;
        return d;
      },
      py::arg("kind") = "parallel", py::arg("n") = 3, py::arg("gamma") = 0.0,
      py::arg("tau") = 2.5, py::arg("mode") = "ungrouped", py::arg("subsystem") = 1,
      py::arg("seeds") = std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11},
      py::arg("target") = 0.999);

  m.def(
      "decoherence_rate",
      [](double t_env, double t_int, double delta_x) {
        qgem::EnvironmentParams env;
        env.temperature_env_k = t_env;
        env.temperature_int_k = t_int;
        env.delta_x_m = delta_x;
        const auto b = qgem::gamma_total(env);
        py::dict d;
        d["lambda_air"] = b.air.lambda_air;
        d["gamma_air_hz"] = b.air.gamma_hz;
        d["lambda_s"] = b.blackbody.lambda_s;
        d["lambda_e"] = b.blackbody.lambda_e;
        d["lambda_a"] = b.blackbody.lambda_a;
        d["gamma_bb_hz"] = b.gamma_bb_hz;
        d["gamma_total_hz"] = b.gamma_total_hz;
        std::vector<std::string> warnings;
        for (const auto& w : b.warnings) warnings.push_back(w.code);
        d["warnings"] = warnings;
        return d;
      },
      py::arg("t_env") = 0.15, py::arg("t_int") = 0.15, py::arg("delta_x") = 250e-6);
}
