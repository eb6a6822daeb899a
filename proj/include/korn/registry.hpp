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

#include <string>
#include <vector>

#include "korn/dofs.hpp"
#include "korn/spaces.hpp"

namespace korn {

struct ElementDescriptor {
  std::string name;
  int dimension = 2;
  std::string base_space;  ///< RT1, BDM1, CR, MTW or ECR-psi
  std::string enrichment;  ///< none, Y1..Y5 or Qstar
  std::string dof_set_id;
  bool expected_korn = true;  ///< published verdict
  int table = 0;              ///< 1 or 2 for the two comparison tables, 0 otherwise
  int row = 0;                ///< 1-based row within its table
  std::string label;          ///< human-readable row label

  bool operator==(const ElementDescriptor&) const = default;
};

const std::vector<ElementDescriptor>& element_registry();
/// Throws std::invalid_argument listing the known names when `name` is not registered.
const ElementDescriptor& find_element(const std::string& name);
std::vector<ElementDescriptor> table_elements(int table);

/// Local space of the element on a simplex of matching dimension.
SpaceBasis build_local_space(const ElementDescriptor& element, const Cell& cell);

std::string to_json(const ElementDescriptor& element);
std::string registry_json();
ElementDescriptor element_from_json(const std::string& text);

}  // namespace korn
