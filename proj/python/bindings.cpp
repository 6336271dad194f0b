// Copyright 2026 The superrep Authors
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
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "superrep/protocols.hpp"

namespace py = pybind11;
using namespace superrep;

namespace {

py::object to_py(const BigInt& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10));
}

py::object to_py(const BigRational& x) {
  return py::module_::import("fractions").attr("Fraction")(to_py(numerator(x)), to_py(denominator(x)));
}

YoungDiagram diagram(const std::vector<int>& rows) { return YoungDiagram(rows); }

py::dict report_dict(const GenerationReport& r) {
  py::dict out;
  out["protocol"] = to_string(r.protocol);
  out["N"] = r.N;
  out["M"] = r.M;
  out["M_simulated"] = r.M_simulated;
  out["d"] = r.d;
  out["J"] = r.J;
  out["fidelity_exact"] = r.fidelity_exact ? py::cast(*r.fidelity_exact) : py::none();
  out["entangled_fidelity"] = r.entangled_fidelity ? py::cast(*r.entangled_fidelity) : py::none();
  out["encoder_entanglement_fidelity"] = static_cast<double>(r.encoder_entanglement_fidelity);
  out["fidelity_bound"] = r.fidelity_bound;
  out["bound_only"] = r.bound_only;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schur-Weyl tools, truncated encoders and gate replication networks";
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  m.def("enumerate_diagrams", [](int K, int d) {
    std::vector<std::vector<int>> out;
    for (const auto& lam : enumerate_diagrams(K, d)) out.push_back(lam.rows());
    return out;
  });
  m.def("dim_rep", [](const std::vector<int>& rows) { return to_py(dim_rep(diagram(rows))); });
  m.def("multiplicity", [](const std::vector<int>& rows) { return to_py(multiplicity(diagram(rows))); });
  m.def("schur_weyl_measure", [](int K, int d) {
    py::list out;
    for (const auto& b : schur_weyl_measure(K, d)) {
      py::dict row;
      row["diagram"] = b.diagram.rows();
      row["dim_rep"] = to_py(b.dim_rep);
      row["mult"] = to_py(b.mult);
      row["weight"] = to_py(b.weight);
      out.append(row);
    }
    return out;
  });
  m.def("tail_rational", [](int K, int d, int J) { return to_py(tail_rational(K, d, J)); });
  m.def("tail_exact", [](int K, int d, int J) { return static_cast<double>(tail_exact(K, d, J)); });
  m.def("tail_bound", &tail_bound);
  m.def("entanglement_fidelity_rational",
        [](int K, int d, int J) { return to_py(entanglement_fidelity_rational(K, d, J)); });
  m.def("entanglement_fidelity_exact",
        [](int K, int d, int J) { return static_cast<double>(entanglement_fidelity_exact(K, d, J)); });
  m.def("fidelity_lower_bound", &fidelity_lower_bound);
  m.def("min_ancilla_dim", [](int N, int M, int J, int d) { return to_py(min_ancilla_dim(N, M, J, d)); },
        py::arg("N"), py::arg("M"), py::arg("J"), py::arg("d") = 2);
  m.def("compression_dims", [](int N, int d, std::optional<int> J) {
    CompressionDims c = compression_dims(N, d, J);
    py::dict out;
    out["system_a_dim"] = to_py(c.system_a_dim);
    out["system_b_dim"] = to_py(c.system_b_dim);
    out["qubit_count"] = c.qubit_count;
    out["round_trip_qubits"] = c.round_trip_qubits;
    out["naive_qubits"] = c.naive_qubits;
    out["upper_bound"] = c.upper_bound;
    out["asymptotic_ratio"] = c.asymptotic_ratio;
    return out;
  }, py::arg("N"), py::arg("d") = 2, py::arg("J") = py::none());
  m.def("generation_bound", &generation_bound);

  m.def("haar_unitary", [](std::size_t d, std::uint64_t seed) {
    RngStream rng(seed);
    return haar_special_unitary(d, rng);
  }, "Haar-random special unitary", py::arg("d"), py::arg("seed"));
  m.def("schur_basis", [](int K, int d) { return schur_basis(K, d)->matrix(); });
  m.def("schur_blocks", [](int K, int d) {
    py::list out;
    for (const auto& b : schur_basis(K, d)->blocks())
      out.append(py::make_tuple(b.diagram.rows(), b.dim_rep, b.mult, b.offset));
    return out;
  });

  py::class_<TruncatedEncoder>(m, "TruncatedEncoder")
      .def(py::init<int, int, int, std::optional<CMatrix>>(), py::arg("K"), py::arg("d"), py::arg("J"),
           py::arg("rho0") = py::none())
      .def_property_readonly("rank", &TruncatedEncoder::rank)
      .def_property_readonly("projector", &TruncatedEncoder::projector)
      .def_property_readonly("reset_state", &TruncatedEncoder::reset_state)
      .def("apply", &TruncatedEncoder::apply)
      .def("fidelity", &TruncatedEncoder::fidelity)
      .def("entanglement_fidelity", &TruncatedEncoder::entanglement_fidelity);

  py::class_<ReplicationNetwork>(m, "ReplicationNetwork")
      .def(py::init<int, int, int, int>(), py::arg("N"), py::arg("M"), py::arg("J"), py::arg("d") = 2)
      .def_property_readonly("ancilla_dim", [](const ReplicationNetwork& n) { return n.embedding().ancilla_dim(); })
      .def("apply", [](const ReplicationNetwork& n, const CMatrix& gate, const CMatrix& rho) {
        return n.apply(GateParams::from_matrix(gate, Tolerances{.unitary = 1e-10}), rho);
      });

  m.def("generate_entangled", [](int N, int M, int d, const CMatrix& gate) {
    return report_dict(generate_entangled(N, M, d, GateParams::from_matrix(gate, Tolerances{.unitary = 1e-10})));
  });
  m.def("generate_phase", [](int N, int M, double theta) { return report_dict(generate_phase(N, M, theta)); });

  m.def("teleport_experiment", [](int d, std::size_t trials, std::uint64_t seed) {
    TeleportStats s = teleport_experiment(d, trials, seed);
    py::dict out;
    out["successes"] = s.successes;
    out["rate"] = s.rate;
    out["stderr"] = s.stderr_rate;
    out["expected"] = s.expected;
    out["min_success_fidelity"] = s.min_success_fidelity;
    return out;
  });
  m.def("typicality_experiment", [](int K, int d, int J, double eps, std::size_t samples, std::uint64_t seed) {
    TypicalityReport r = typicality_experiment(K, d, J, eps, samples, seed);
    py::dict out;
    out["mean_fidelity"] = r.mean_fidelity;
    out["fidelity_stderr"] = r.fidelity_stderr;
    out["predicted_mean"] = r.predicted_mean;
    out["empirical_prob_below"] = r.empirical_prob_below;
    out["markov_bound"] = r.markov_bound;
    out["theorem_bound"] = r.theorem_bound;
    out["fidelities"] = r.fidelities;
    return out;
  });
}
