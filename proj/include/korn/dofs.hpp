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

#include <optional>
#include <string>
#include <vector>

#include "korn/geometry.hpp"
#include "korn/linalg.hpp"
#include "korn/spaces.hpp"

namespace korn {

/// Which quantity of the field a moment functional integrates.
enum class Selector { normal, tangential2d, cross_normal3d, full_vector, interior };
/// Weight families: P0 and P1 scalars on a face, RT0(f), the two constant tangents
/// (P0(f))^2, and constant unit vectors.
enum class WeightSpace { P0, P1, RT0, P0_tangent, constants };
enum class DofDomain { each_face, cell };

std::string to_string(Selector s);
std::string to_string(WeightSpace w);
std::string to_string(DofDomain d);
Selector parse_selector(const std::string& s);
WeightSpace parse_weight_space(const std::string& s);
DofDomain parse_dof_domain(const std::string& s);

struct DofSetEntry {
  Selector selector;
  WeightSpace weight_space;
  DofDomain domain;
};

struct DofSet {
  std::string id;
  std::vector<DofSetEntry> entries;
};

/// Named DOF sets used by the element registry.
const DofSet& find_dof_set(const std::string& id);
std::vector<std::string> dof_set_ids();

struct DofFunctional {
  Selector selector = Selector::interior;
  std::optional<Face> face;  ///< integration face; empty for cell moments
  VecPoly weight;            ///< chart variables on a face, ambient variables on a cell
  std::string label;
};

/// Weight functions of one family on one face, in the face chart.
std::vector<VecPoly> face_weights(WeightSpace w, Selector s, const Face& face);
/// Face functionals of `set` on the given face (cell entries are skipped).
std::vector<DofFunctional> face_dofs(const DofSet& set, const Face& face);
/// All functionals of `set` on a cell, faces in faces_of order, cell moments last.
std::vector<DofFunctional> build_dofs(const DofSet& set, const Cell& cell);

/// Exact chart-measure moment of v. Throws std::invalid_argument on a selector that
/// does not fit the dimension.
Rational eval_dof(const DofFunctional& dof, const VecPoly& v, const Cell& cell);
Vector eval_dofs(const std::vector<DofFunctional>& dofs, const VecPoly& v, const Cell& cell);

/// Rows are functionals, columns are generators.
RationalMatrix dof_matrix(const std::vector<VecPoly>& generators, const std::vector<DofFunctional>& dofs,
                          const Cell& cell);

enum class UnisolvenceVerdict { unisolvent, singular, not_square };
std::string to_string(UnisolvenceVerdict v);

struct UnisolvenceResult {
  UnisolvenceVerdict verdict = UnisolvenceVerdict::not_square;
  std::size_t dof_count = 0;
  std::size_t dimension = 0;
  std::size_t rank = 0;               ///< rank of the DOF matrix on an independent basis
  Rational determinant = 0;           ///< on the independent basis, when square
  std::optional<VecPoly> nullvector;  ///< nonzero member annihilated by every functional
};

UnisolvenceResult unisolvence(const SpaceBasis& space, const std::vector<DofFunctional>& dofs, const Cell& cell);

std::size_t span_dimension(const std::vector<VecPoly>& generators);

/// The unique member of the space with the given DOF values. Requires a unisolvent pair.
VecPoly interpolate(const SpaceBasis& space, const std::vector<DofFunctional>& dofs, const Cell& cell,
                    const Vector& values);

}  // namespace korn
