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

#include "korn/driver.hpp"

#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace korn {

namespace {

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

}  // namespace

bool TableReport::all_match() const {
  for (const auto& r : rows)
    if (!r.verdict_matches()) return false;
  return true;
}

bool TableReport::all_unisolvent() const {
  for (const auto& r : rows)
    if (r.unisolvence.verdict != UnisolvenceVerdict::unisolvent) return false;
  return true;
}

TableReport reproduce_tables(const std::vector<int>& tables) {
  TableReport out;
  for (int t : tables) {
    for (const auto& e : table_elements(t)) {
      TableRow row;
      row.element = e;
      row.coverage = dof_coverage_test(e);
      Cell ref = reference_simplex(e.dimension);
      row.unisolvence = unisolvence(build_local_space(e, ref), build_dofs(find_dof_set(e.dof_set_id), ref), ref);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

std::string to_json(const TableReport& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json x;
    x["table"] = row.element.table;
    x["row"] = row.element.row;
    x["element"] = row.element.name;
    x["label"] = row.element.label;
    x["expected"] = yes_no(row.element.expected_korn);
    x["computed"] = yes_no(row.coverage.holds);
    x["match"] = row.verdict_matches();
    x["unisolvent"] = row.unisolvence.verdict == UnisolvenceVerdict::unisolvent;
    x["local_dimension"] = row.unisolvence.dimension;
    x["determinant"] = to_string(row.unisolvence.determinant);
    x["coverage"] = nlohmann::ordered_json::parse(to_json(row.coverage));
    rows.push_back(x);
  }
  j["rows"] = rows;
  j["all_match"] = r.all_match();
  j["all_unisolvent"] = r.all_unisolvent();
  return j.dump(2);
}

std::string to_text(const TableReport& r) {
  std::ostringstream os;
  int current = -1;
  for (const auto& row : r.rows) {
    if (row.element.table != current) {
      current = row.element.table;
      os << "Table " << current << "\n";
      os << "  " << std::left << std::setw(4) << "row" << std::setw(20) << "element" << std::setw(10) << "expected"
         << std::setw(10) << "computed" << std::setw(8) << "match" << "unisolvent (dim, det)\n";
    }
    os << "  " << std::left << std::setw(4) << row.element.row << std::setw(20) << row.element.name << std::setw(10)
       << yes_no(row.element.expected_korn) << std::setw(10) << yes_no(row.coverage.holds) << std::setw(8)
       << (row.verdict_matches() ? "ok" : "DIFF") << to_string(row.unisolvence.verdict) << " ("
       << row.unisolvence.dimension << ", " << to_string(row.unisolvence.determinant) << ")\n";
    if (!row.verdict_matches() && row.coverage.witness) {
      os << "    witness:\n";
      for (std::size_t c = 0; c < row.coverage.witness->pieces.size(); ++c)
        os << "      cell " << c << ": " << to_text(row.coverage.witness->pieces[c]) << "\n";
    }
  }
  os << "all verdicts match: " << yes_no(r.all_match()) << "\n";
  os << "all unisolvent: " << yes_no(r.all_unisolvent()) << "\n";
  return os.str();
}

std::vector<std::string> kernel_space_names() {
  std::vector<std::string> out;
  for (const auto& e : element_registry()) out.push_back(e.name);
  out.push_back("p1-continuous");
  out.push_back("rm-piecewise");
  return out;
}

KernelRun run_kernel(const std::string& space_name, const Mesh& mesh, const KernelOptions& options) {
  KernelRun run;
  PiecewiseSpace space;
  if (space_name == "p1-continuous") {
    space = make_piecewise_space(mesh, space_name, basis_vector_P(mesh.dim(), 1).generators, find_dof_set("p1-trace"));
    run.expected_holds = true;
  } else if (space_name == "rm-piecewise") {
    space = make_piecewise_space(mesh, space_name, basis_RM(mesh.dim()).generators, std::nullopt);
    run.expected_holds = options.jump_control == JumpControl::minimal;
  } else {
    const ElementDescriptor& e = find_element(space_name);
    if (e.dimension != mesh.dim()) {
      throw std::invalid_argument("element " + e.name + " is " + std::to_string(e.dimension) + "D but the mesh is " +
                                  std::to_string(mesh.dim()) + "D");
    }
    if (!mesh.is_simplicial()) throw std::invalid_argument("element " + e.name + " needs a simplicial mesh");
    space = make_piecewise_space(mesh, e);
    run.expected_holds = e.expected_korn;
  }
  run.report = korn_kernel_test(mesh, space, options);
  return run;
}

std::string registry_text() {
  std::ostringstream os;
  os << std::left << std::setw(20) << "name" << std::setw(5) << "dim" << std::setw(8) << "base" << std::setw(8)
     << "enrich" << std::setw(14) << "dofs" << std::setw(7) << "korn" << "source\n";
  for (const auto& e : element_registry()) {
    os << std::left << std::setw(20) << e.name << std::setw(5) << e.dimension << std::setw(8) << e.base_space
       << std::setw(8) << e.enrichment << std::setw(14) << e.dof_set_id << std::setw(7) << yes_no(e.expected_korn)
       << (e.table ? "table " + std::to_string(e.table) + " row " + std::to_string(e.row) : std::string("-")) << "\n";
  }
  return os.str();
}

}  // namespace korn
