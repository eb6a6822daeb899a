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

// Thin layer over korn_core. Every entry point returns a JSON document as a string;
// the Python package decodes it.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "korn/driver.hpp"
#include "korn/mesh_io.hpp"
#include "korn/sharpness.hpp"

namespace py = pybind11;

namespace {

korn::Mesh resolve_mesh(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return korn::builtin_mesh(spec.substr(prefix.size()));
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return korn::parse_mesh_json(spec);
  return korn::load_mesh(spec);
}

std::string kernel(const std::string& element, const std::string& mesh, bool phi, const std::string& jumps) {
  if (jumps != "none" && jumps != "minimal") throw std::invalid_argument("jumps must be \"none\" or \"minimal\"");
  korn::KernelOptions o;
  o.include_phi = phi;
  o.jump_control = jumps == "minimal" ? korn::JumpControl::minimal : korn::JumpControl::none;
  korn::KernelRun run = korn::run_kernel(element, resolve_mesh(mesh), o);
  auto j = nlohmann::ordered_json::parse(korn::to_json(run.report));
  j["expected_verdict"] = korn::verdict_text(run.expected_holds);
  j["matches_expected"] = run.matches();
  return j.dump();
}

std::string counterexample(int dim, int k) {
  return korn::to_json(korn::verify_sharpness(korn::build_counterexample(korn::condition_set(dim, k))));
}

std::string unisolvence_report(const std::string& element) {
  const auto& e = korn::find_element(element);
  korn::Cell ref = korn::reference_simplex(e.dimension);
  auto r = korn::unisolvence(korn::build_local_space(e, ref), korn::build_dofs(korn::find_dof_set(e.dof_set_id), ref), ref);
  nlohmann::ordered_json j;
  j["element"] = e.name;
  j["verdict"] = korn::to_string(r.verdict);
  j["dof_count"] = r.dof_count;
  j["dimension"] = r.dimension;
  j["rank"] = r.rank;
  j["determinant"] = korn::to_string(r.determinant);
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_korngate, m) {
  m.doc() = "Exact Korn-inequality checks for piecewise polynomial spaces (JSON-returning core)";

  py::register_exception<korn::MeshParseError>(m, "MeshParseError", PyExc_ValueError);

  m.def("registry_json", &korn::registry_json);
  m.def("kernel_space_names", &korn::kernel_space_names);
  m.def("builtin_mesh_names", &korn::builtin_mesh_names);
  m.def("builtin_mesh_json", [](const std::string& name) { return korn::mesh_to_json(korn::builtin_mesh(name)); },
        py::arg("name"));
  m.def("reproduce_tables_json",
        [](const std::vector<int>& tables) { return korn::to_json(korn::reproduce_tables(tables)); },
        py::arg("tables") = std::vector<int>{1, 2});
  m.def("counterexample_json", &counterexample, py::arg("dim"), py::arg("k"));
  m.def("kernel_json", &kernel, py::arg("element"), py::arg("mesh"), py::arg("phi") = true,
        py::arg("jumps") = "none", py::call_guard<py::gil_scoped_release>());
  m.def("unisolvence_json", &unisolvence_report, py::arg("element"));
  m.def("coverage_json", [](const std::string& element) {
    return korn::to_json(korn::dof_coverage_test(korn::find_element(element)));
  }, py::arg("element"));
}
