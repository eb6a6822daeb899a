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

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "korn/dofs.hpp"
#include "korn/geometry.hpp"
#include "korn/integrate.hpp"
#include "korn/registry.hpp"
#include "korn/spaces.hpp"

namespace korn {

/// Piecewise polynomial field, one piece per mesh cell (indexed like Mesh::cells()).
struct PwField {
  std::vector<VecPoly> pieces;
};

/// Jump of a piecewise field on one face, in chart variables.
/// Interior faces: second-cell trace minus first-cell trace (the face normal points out
/// of the first cell). Boundary faces: the trace itself.
struct JumpTrace {
  int face = -1;
  VecPoly jump;
  Poly normal_part;         ///< jump . n
  VecPoly tangential_part;  ///< 2D: one component, jump . t; 3D: jump x n
};

JumpTrace jump_on_face(const Mesh& mesh, const PwField& u, int face);

/// L2(chart) orthogonal projection of g onto span(basis); exact Gram solve.
VecPoly project_l2(const VecPoly& g, const std::vector<VecPoly>& basis, const Face& face);
Rational chart_inner(const VecPoly& a, const VecPoly& b, const Face& face);

struct ProjectedJump {
  Poly pi1_normal;            ///< onto P1(f)
  Poly pi0_normal;            ///< onto P0(f)
  Poly pi10_normal;           ///< pi1 - pi0, the part with zero mean
  VecPoly rm_tangential;      ///< onto P0(f) in 2D, RT0(f) in 3D
};

ProjectedJump project_jump(const Face& face, const JumpTrace& jt);

/// One functional of the minimal interface set on a face: a moment of the normal or the
/// tangential part of the jump against a chart weight. The weights of each part are
/// mutually L2-orthogonal, so dropping one leaves the projection onto the rest.
struct MinimalFunctional {
  std::string part;  ///< "normal" or "tangential"
  int index = 0;
  VecPoly weight;
  std::string name;  ///< overrides the default label when set
  std::string label() const { return name.empty() ? part + "[" + std::to_string(index) + "]" : name; }
};

/// normal: P1(f) weights {1, (x - c_f).t_i}; tangential: {1} in 2D, RT0(f) in 3D.
std::vector<MinimalFunctional> minimal_functionals(const Face& face);
Rational apply_minimal(const MinimalFunctional& fn, const JumpTrace& jt, const Face& face);

struct FaceDeficiency {
  int face = -1;
  Rational normal_sq;      ///< ||pi1(jump . n)||^2 in chart measure
  Rational tangential_sq;  ///< ||pi_RM(tangential part)||^2 in chart measure
};

struct JumpDeficiency {
  Rational total;
  std::vector<FaceDeficiency> faces;
};

JumpDeficiency jump_deficiency(const Mesh& mesh, const PwField& u);

struct PhiResult {
  std::vector<Rational> moments;  ///< integral over the boundary of u . m_i
  Rational phi_sq;                ///< b^T G^{-1} b
  double value = 0;               ///< sqrt(phi_sq)
  bool true_measure = false;      ///< boundary measure policy actually used
};

PhiResult phi_seminorm(const Mesh& mesh, const PwField& u);
bool phi_is_zero(const Mesh& mesh, const PwField& u);

/// Unique rigid motion with the same cell mean and the same mean curl as v.
RigidMotion local_rm_projection(const VecPoly& v, const Cell& cell);

/// Continuous piecewise-linear field whose vertex values are patch averages.
PwField vertex_average_E(const Mesh& mesh, const PwField& u);

Rational h1_seminorm_sq(const Mesh& mesh, const PwField& u);
Rational strain_norm_sq(const Mesh& mesh, const PwField& u);

/// Per-cell bases plus optional continuity functionals imposed across interior faces.
struct PiecewiseSpace {
  std::string name;
  std::vector<std::vector<VecPoly>> cell_bases;  ///< independent generators per cell
  std::optional<DofSet> continuity;
};

PiecewiseSpace make_piecewise_space(const Mesh& mesh, const ElementDescriptor& element);
PiecewiseSpace make_piecewise_space(const Mesh& mesh, const std::string& name,
                                    const std::vector<VecPoly>& local_generators,
                                    std::optional<DofSet> continuity);
PwField field_from_coefficients(const PiecewiseSpace& space, const Vector& coeffs);

enum class JumpControl { none, minimal };

struct KernelOptions {
  bool include_phi = true;
  JumpControl jump_control = JumpControl::none;
  bool impose_continuity = true;
};

struct Residual {
  std::string name;
  Rational value;
};

struct KornReport {
  std::string element;
  std::string test;  ///< "coverage" or "kernel"
  bool holds = false;
  std::size_t kernel_dim = 0;
  std::size_t expected = 0;
  std::optional<PwField> witness;
  std::vector<Residual> residuals;
  std::vector<std::string> notes;
};

std::string verdict_text(bool holds);
std::string to_json(const KornReport& report);
std::string to_text(const KornReport& report);

/// N = {strain = 0, optional minimal jumps = 0, optional Phi moments = 0, continuity}.
/// Holds iff N equals the constants (with Phi) or RM(domain) within the space (without).
KornReport korn_kernel_test(const Mesh& mesh, const PiecewiseSpace& space, const KernelOptions& options);

/// Two simplices sharing one face; K = pairs whose shared-face DOFs agree. Holds iff the
/// minimal interface functionals vanish on K. kernel_dim is their rank on K.
KornReport dof_coverage_test(const ElementDescriptor& element);

struct EstimateOptions {
  bool include_phi = true;
  JumpControl jump_control = JumpControl::minimal;
  std::set<std::string> dropped;  ///< functional labels left out of the jump term
  /// Interface functionals per face; minimal_functionals when empty.
  std::function<std::vector<MinimalFunctional>(const Face&)> functionals;
};

struct KornEstimate {
  double value = 0;  ///< smallest generalized eigenvalue of RHS form against |.|_{H1}^2
  std::string weights;
  std::size_t dimension = 0;
};

/// Floating path. Jump terms use true face measure with unit frames and the weight
/// (diam f)^{-1}. Throws std::runtime_error when the H1 form has no positive part.
KornEstimate korn_constant_estimate(const Mesh& mesh, const PiecewiseSpace& space, const EstimateOptions& options);

}  // namespace korn
