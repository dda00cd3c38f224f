// Copyright 2026 The Heraldic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "heraldic/io.hpp"
#include "heraldic/random.hpp"

namespace py = pybind11;
using namespace heraldic;

namespace {

std::string herald(const CMatrix& u, const std::string& problem_json) {
  const ProblemSpec p = io::problem_from_json(io::Json::parse(problem_json));
  return io::to_json(herald_analysis(u, p), p).dump();
}

std::string verify(const std::string& name, int sign) {
  const auto s = builtin_scheme(name, sign);
  const auto report = verify_scheme(s.circuit, s.problem, s.claims);
  io::Json j = io::to_json(report);
  j["circuit"] = io::to_json(s.circuit);
  return j.dump();
}

std::string search(const std::string& config_json, int workers) {
  const Stage1Config cfg = io::stage1_config_from_json(io::Json::parse(config_json));
  const auto r = stage1_search(cfg, workers);
  io::Json out{{"problem", io::to_json(cfg.spec)}, {"candidates", io::Json::array()}};
  for (const auto& c : r.candidates) out["candidates"].push_back(io::to_json(c, cfg.spec));
  return out.dump();
}

std::string refine(const std::string& candidate_json, const std::string& problem_json, const std::string& config_json) {
  const ProblemSpec p = io::problem_from_json(io::Json::parse(problem_json));
  const Candidate c = io::candidate_from_json(io::Json::parse(candidate_json), p);
  const Stage2Config cfg = io::stage2_config_from_json(io::Json::parse(config_json), p, c.ancilla_set);
  return io::to_json(stage2_refine(c, p, cfg), p).dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heralded linear-optics core";
  m.attr("__version__") = HERALDIC_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<NotUnitaryError>(m, "NotUnitaryError", PyExc_ValueError);

  m.def("permanent", py::overload_cast<const CMatrix&>(&permanent), py::arg("matrix"));
  m.def(
      "transition_amplitude",
      [](const CMatrix& u, const std::vector<int>& in, const std::vector<int>& out) {
        return transition_amplitude(u, FockState(in), FockState(out));
      },
      py::arg("u"), py::arg("input"), py::arg("output"));
  m.def("haar_random_unitary", &haar_random_unitary, py::arg("dim"), py::arg("seed"));
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));
  m.def("clements_decompose", [](const CMatrix& u) { return io::to_json(clements_decompose(u)).dump(); }, py::arg("u"));
  m.def("compose", [](const std::string& circuit) { return compose(io::circuit_from_json(io::Json::parse(circuit))); },
        py::arg("circuit"));
  m.def("count_nontrivial",
        [](const std::string& circuit, double tol) { return count_nontrivial(io::circuit_from_json(io::Json::parse(circuit)), tol); },
        py::arg("circuit"), py::arg("tol") = kTrivialAngle);
  m.def("herald_analysis", &herald, py::arg("u"), py::arg("problem"));
  m.def("builtin_problem", [](const std::string& name, int sign) { return io::to_json(builtin_scheme(name, sign).problem).dump(); },
        py::arg("name"), py::arg("sign") = 1);
  m.def("builtin_scheme_names", &builtin_scheme_names);
  m.def("verify", &verify, py::arg("name"), py::arg("sign") = 1);
  m.def("search", &search, py::arg("config"), py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("refine", &refine, py::arg("candidate"), py::arg("problem"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_cli", &run_cli, py::arg("args"));
}
