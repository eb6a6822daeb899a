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

#include "korn/registry.hpp"

#include <json.hpp>
#include <stdexcept>

namespace korn {

namespace {

using nlohmann::json;

json descriptor_to_json(const ElementDescriptor& e) {
  return json{{"name", e.name},
              {"dimension", e.dimension},
              {"base_space", e.base_space},
              {"enrichment", e.enrichment},
              {"dof_set_id", e.dof_set_id},
              {"expected_korn", e.expected_korn},
              {"table", e.table},
              {"row", e.row},
              {"label", e.label}};
}

std::vector<ElementDescriptor> make_registry() {
  return {
      {"hdiv-rt1-y1-2d", 2, "RT1", "Y1", "rt-2d", true, 1, 1, "1st FEM (2D)"},
      {"hdiv-bdm1-y1-2d", 2, "BDM1", "Y1", "bdm-2d", true, 1, 2, "2nd FEM (2D)"},
      {"hdiv-rt1-y2-3d", 3, "RT1", "Y2", "rt-3d-rt0", true, 1, 3, "1st FEM (3D)"},
      {"hdiv-bdm1-y2-3d", 3, "BDM1", "Y2", "bdm-3d-rt0", true, 1, 4, "2nd FEM (3D)"},
      {"hdiv-rt1-y3-3d", 3, "RT1", "Y3", "rt-3d-p0t", false, 1, 5, "3rd FEM (3D)"},
      {"hdiv-bdm1-y3-3d", 3, "BDM1", "Y3", "bdm-3d-p0t", false, 1, 6, "4th FEM (3D)"},
      {"hdiv-rt1-y4-2d", 2, "RT1", "Y4", "rt-2d", true, 2, 1, "1st FEM (2D)"},
      {"hdiv-bdm1-y4-2d", 2, "BDM1", "Y4", "bdm-2d", true, 2, 2, "2nd FEM (2D)"},
      {"hdiv-rt1-y5-3d", 3, "RT1", "Y5", "rt-3d-p0t", false, 2, 3, "3rd FEM (3D)"},
      {"hdiv-bdm1-y5-3d", 3, "BDM1", "Y5", "bdm-3d-p0t", false, 2, 4, "4th FEM (3D)"},
      {"mtw-2d", 2, "MTW", "none", "bdm-2d", true, 0, 0, "cubic, constant divergence, linear normal trace"},
      {"ecr-psi-2d", 2, "ECR-psi", "none", "bdm-2d", true, 0, 0, "CR plus edge-bubble fields"},
      {"ecr-curl-2d", 2, "CR", "Y1", "bdm-2d", true, 0, 0, "CR plus curl(bT Y1)"},
      {"ecr-curl-3d", 3, "CR", "Y2", "bdm-3d-rt0", true, 0, 0, "CR plus curl(bT Y2)"},
      {"v1-qstar-3d", 3, "BDM1", "Qstar", "bdm-3d-rt0", true, 0, 0, "BDM1 plus curl(bT Q*)"},
      {"cr-2d", 2, "CR", "none", "cr-mean", false, 0, 0, "Crouzeix-Raviart, face means"},
      {"cr-3d", 3, "CR", "none", "cr-mean", false, 0, 0, "Crouzeix-Raviart, face means"},
  };
}

SpaceBasis base_space(const std::string& base, const Cell& cell) {
  if (base == "RT1") return basis_RT1(cell.dim());
  if (base == "BDM1") return basis_BDM1(cell.dim());
  if (base == "CR") return basis_CR(cell.dim());
  if (base == "MTW") return basis_MTW(cell);
  if (base == "ECR-psi") return basis_enrichedCR_psi(cell);
  throw std::invalid_argument("unknown base space '" + base + "'");
}

}  // namespace

const std::vector<ElementDescriptor>& element_registry() {
  static const std::vector<ElementDescriptor> registry = make_registry();
  return registry;
}

const ElementDescriptor& find_element(const std::string& name) {
  for (const auto& e : element_registry()) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const auto& e : element_registry()) known += (known.empty() ? "" : ", ") + e.name;
  throw std::invalid_argument("unknown element '" + name + "'; known elements: " + known);
}

std::vector<ElementDescriptor> table_elements(int table) {
  std::vector<ElementDescriptor> out;
  for (const auto& e : element_registry()) {
    if (e.table == table) out.push_back(e);
  }
  return out;
}

SpaceBasis build_local_space(const ElementDescriptor& element, const Cell& cell) {
  if (cell.dim() != element.dimension) {
    throw std::invalid_argument("element " + element.name + " needs a " + std::to_string(element.dimension) + "D cell");
  }
  SpaceBasis v0 = base_space(element.base_space, cell);
  if (element.enrichment == "none") return v0;
  SpaceBasis y = element.enrichment == "Qstar" ? basis_Qstar(cell) : basis_Y(parse_ykind(element.enrichment), cell);
  return assemble_enriched(v0, y, cell);
}

std::string to_json(const ElementDescriptor& element) { return descriptor_to_json(element).dump(2); }

std::string registry_json() {
  json arr = json::array();
  for (const auto& e : element_registry()) arr.push_back(descriptor_to_json(e));
  return arr.dump(2);
}

ElementDescriptor element_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("element descriptor: ") + err.what());
  }
  try {
    ElementDescriptor e;
    e.name = j.at("name").get<std::string>();
    e.dimension = j.at("dimension").get<int>();
    e.base_space = j.at("base_space").get<std::string>();
    e.enrichment = j.at("enrichment").get<std::string>();
    e.dof_set_id = j.at("dof_set_id").get<std::string>();
    e.expected_korn = j.value("expected_korn", true);
    e.table = j.value("table", 0);
    e.row = j.value("row", 0);
    e.label = j.value("label", std::string());
    if (e.dimension != 2 && e.dimension != 3) throw std::invalid_argument("dimension must be 2 or 3");
    find_dof_set(e.dof_set_id);
    return e;
  } catch (const json::exception& err) {
    throw std::invalid_argument(std::string("element descriptor: ") + err.what());
  }
}

}  // namespace korn
