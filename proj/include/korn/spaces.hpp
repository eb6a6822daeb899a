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
#include "korn/poly.hpp"

namespace korn {

/// Finite generating set of a polynomial space on a cell (ambient variables) or a
/// face (chart variables). Scalar spaces use one-component generators.
struct SpaceBasis {
  std::string name;
  std::vector<VecPoly> generators;
  std::size_t rank = 0;  ///< exact dimension of the span
};

SpaceBasis make_space(std::string name, std::vector<VecPoly> generators);

/// Columns are generators, rows are (component, monomial) coefficients.
RationalMatrix coefficient_matrix(const std::vector<VecPoly>& generators);
std::size_t span_rank(const std::vector<VecPoly>& generators);
bool in_span(const std::vector<VecPoly>& generators, const VecPoly& v);
bool span_equal(const std::vector<VecPoly>& a, const std::vector<VecPoly>& b);
/// Maximal independent subset, keeping the first occurrence.
std::vector<VecPoly> independent_subset(const std::vector<VecPoly>& generators);
/// Coefficients c with sum c_i g_i = v, if v is in the span. Generators must be independent.
std::optional<Vector> coordinates_in(const std::vector<VecPoly>& generators, const VecPoly& v);

/// a + A x with A skew. 2D: A x = w (-y, x); 3D: A = [[0, a1, a2], [-a1, 0, a3], [-a2, -a3, 0]].
struct RigidMotion {
  Vector translation;
  Vector skew;  ///< 1 entry in 2D, 3 in 3D

  VecPoly field() const;
  static RigidMotion zero(int dim);
};

std::size_t rm_dimension(int dim);

SpaceBasis basis_RM(int dim);
/// Linear space {m in RM : integral of m over the boundary = 0}, using boundary_measure(mesh).
SpaceBasis basis_RM_boundary(const Mesh& mesh);
/// Lowest-order Raviart-Thomas space on a 3D face, chart variables: t1, t2, x - c_f.
SpaceBasis basis_RT0_face(const Face& face);
/// Ambient-coordinate version of the same three fields.
std::vector<VecPoly> rt0_face_fields(const Face& face);
/// Tangential traces of rigid motions: (v . t)|_f in 2D, (v x n)|_f in 3D (chart variables).
SpaceBasis trace_tangential_rm(const Face& face, int dim);

Poly bubble_cell(const Cell& cell);
/// Product of all barycentric coordinates except lambda_face (face opposite that vertex).
Poly bubble_face(const Cell& cell, int face);
/// 2D edge bubble l0 l1 + l1 l2 + l2 l0 - 1/6, L2-orthogonal to P1 on every edge.
Poly edge_bubble_b(const Cell& cell);

/// Scalar monomials of degree <= k in `dim` variables, as one-component fields.
SpaceBasis basis_P(int dim, int k);
/// (P_k)^dim.
SpaceBasis basis_vector_P(int dim, int k);

SpaceBasis basis_CR(int dim);
SpaceBasis basis_BDM1(int dim);
SpaceBasis basis_RT1(int dim);

enum class YKind { Y1, Y2, Y3, Y4, Y5 };
YKind parse_ykind(const std::string& name);
std::string to_string(YKind kind);

SpaceBasis basis_Y(YKind kind, const Cell& cell);
/// Y3 built from (P1)^3 monomials kept greedily whenever they enlarge span(removed set + kept).
SpaceBasis basis_Y3_greedy(const Cell& cell);

SpaceBasis basis_Qfstar(const Cell& cell, int face);
SpaceBasis basis_Qstar(const Cell& cell);

/// {v in (P3)^2 : div v in P0, v.n in P1 on each edge}.
SpaceBasis basis_MTW(const Cell& cell);
/// (P1)^2 + span{b (l_i - l_j) n_ij}.
SpaceBasis basis_enrichedCR_psi(const Cell& cell);
/// (P1)^d + curl(b_T Y1) in 2D, (P1)^3 + curl(b_T Y2) in 3D.
SpaceBasis basis_enrichedCR_curl(const Cell& cell);

/// curl(b_T y) for each generator y.
std::vector<VecPoly> curl_bubble(const Cell& cell, const SpaceBasis& y);
/// V0 + curl(b_T Y); throws std::logic_error if a curl generator is not divergence-free.
SpaceBasis assemble_enriched(const SpaceBasis& v0, const SpaceBasis& y, const Cell& cell);

}  // namespace korn
