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

#include "korn/korn.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>

namespace korn {

namespace {

/// Jump-style parts of a single chart trace (used for one-sided contributions).
JumpTrace parts_of(const Face& face, int id, VecPoly trace) {
  JumpTrace jt;
  jt.face = id;
  jt.normal_part = dot(trace, face.normal);
  if (face.dim == 2) {
    jt.tangential_part = VecPoly::scalar(dot(trace, face.tangents[0]));
  } else {
    jt.tangential_part = cross(trace, face.normal);
  }
  jt.jump = std::move(trace);
  return jt;
}

std::vector<VecPoly> scalar_weights_of(WeightSpace w, const Face& face) {
  return face_weights(w, Selector::normal, face);
}

std::vector<VecPoly> tangential_weights(const Face& face) {
  if (face.dim == 2) return face_weights(WeightSpace::P0, Selector::tangential2d, face);
  return basis_RT0_face(face).generators;
}

std::vector<Poly> strain_entries(const VecPoly& v) {
  auto s = strain(v);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) out.push_back(s[i][j]);
  return out;
}

std::size_t matrix_rank_of_columns(const std::vector<Vector>& cols, std::size_t rows) {
  if (cols.empty()) return 0;
  return rank(RationalMatrix::from_columns(cols, rows));
}

struct Layout {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
};

Layout layout_of(const PiecewiseSpace& space) {
  Layout l;
  for (const auto& b : space.cell_bases) {
    l.offset.push_back(l.total);
    l.total += b.size();
  }
  return l;
}

/// Rows of one interface functional: value on the second cell minus value on the first.
template <typename F>
Vector interface_row(const Layout& l, const PiecewiseSpace& space, const Face& face, F&& value) {
  Vector row(l.total);
  for (int side = 0; side < 2; ++side) {
    int c = side == 0 ? face.first_cell : face.second_cell;
    const Rational sign = side == 0 ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < space.cell_bases[c].size(); ++j) {
      row[l.offset[c] + j] = sign * value(c, space.cell_bases[c][j]);
    }
  }
  return row;
}

std::vector<Vector> continuity_rows(const Mesh& mesh, const PiecewiseSpace& space, const Layout& l) {
  std::vector<Vector> rows;
  if (!space.continuity) return rows;
  for (int fid : mesh.interior_faces()) {
    const Face& face = mesh.faces()[fid];
    for (const auto& dof : face_dofs(*space.continuity, face)) {
      rows.push_back(interface_row(l, space, face, [&](int c, const VecPoly& g) {
        return eval_dof(dof, g, mesh.cells()[c]);
      }));
    }
  }
  return rows;
}

std::vector<Vector> minimal_jump_rows(const Mesh& mesh, const PiecewiseSpace& space, const Layout& l,
                                      const std::set<std::string>& dropped = {}) {
  std::vector<Vector> rows;
  for (int fid : mesh.interior_faces()) {
    const Face& face = mesh.faces()[fid];
    for (const auto& fn : minimal_functionals(face)) {
      if (dropped.count(fn.label())) continue;
      rows.push_back(interface_row(l, space, face, [&](int, const VecPoly& g) {
        return apply_minimal(fn, parts_of(face, fid, restrict_to_face(g, face)), face);
      }));
    }
  }
  return rows;
}

/// Phi moments as linear forms: row i holds the coefficients of the boundary integral of u . m_i.
std::vector<Vector> phi_rows(const Mesh& mesh, const PiecewiseSpace& space, const Layout& l,
                             const std::vector<VecPoly>& rmb, const BoundaryMeasure& measure) {
  std::vector<Vector> rows(rmb.size(), Vector(l.total));
  for (int fid : mesh.boundary_faces()) {
    const Face& face = mesh.faces()[fid];
    int c = face.first_cell;
    for (std::size_t i = 0; i < rmb.size(); ++i) {
      for (std::size_t j = 0; j < space.cell_bases[c].size(); ++j) {
        rows[i][l.offset[c] + j] += measure.weights[fid] * integrate_on_face(dot(space.cell_bases[c][j], rmb[i]), face);
      }
    }
  }
  return rows;
}

std::vector<Vector> strain_rows(const PiecewiseSpace& space, const Layout& l) {
  std::vector<Vector> rows;
  for (std::size_t c = 0; c < space.cell_bases.size(); ++c) {
    std::vector<VecPoly> strains;
    for (const auto& g : space.cell_bases[c]) strains.push_back(VecPoly(strain_entries(g)));
    RationalMatrix m = coefficient_matrix(strains);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Vector row(l.total);
      for (std::size_t j = 0; j < m.cols(); ++j) row[l.offset[c] + j] = m(i, j);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

RationalMatrix stack(const std::vector<std::vector<Vector>>& blocks, std::size_t cols) {
  RationalMatrix m(0, cols);
  for (const auto& b : blocks)
    for (const auto& r : b) m.append_row(r);
  return m;
}

bool annihilates(const RationalMatrix& m, const Vector& v) {
  if (m.rows() == 0) return true;
  for (const auto& x : m.apply(v)) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

std::string boundary_note(const BoundaryMeasure& m) {
  return std::string("Phi boundary measure: ") + (m.true_measure ? "true face measure" : "chart measure");
}

}  // namespace

// ---------------------------------------------------------------------------
// Jumps and projections

JumpTrace jump_on_face(const Mesh& mesh, const PwField& u, int id) {
  const Face& face = mesh.faces().at(id);
  VecPoly trace = restrict_to_face(u.pieces.at(face.first_cell), face);
  if (!face.is_boundary) trace = restrict_to_face(u.pieces.at(face.second_cell), face) - trace;
  return parts_of(face, id, std::move(trace));
}

Rational chart_inner(const VecPoly& a, const VecPoly& b, const Face& face) {
  return integrate_face(dot(a, b), face);
}

VecPoly project_l2(const VecPoly& g, const std::vector<VecPoly>& basis, const Face& face) {
  const std::size_t n = basis.size();
  RationalMatrix gram(n, n);
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = chart_inner(g, basis[i], face);
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = chart_inner(basis[i], basis[j], face);
  }
  auto c = solve(gram, rhs);
  if (!c) throw std::invalid_argument("project_l2: dependent projection basis");
  VecPoly out(static_cast<int>(g.size()), face.dim - 1);
  for (std::size_t i = 0; i < n; ++i) out += (*c)[i] * basis[i];
  return out;
}

ProjectedJump project_jump(const Face& face, const JumpTrace& jt) {
  ProjectedJump p;
  VecPoly normal = VecPoly::scalar(jt.normal_part);
  p.pi1_normal = project_l2(normal, scalar_weights_of(WeightSpace::P1, face), face)[0];
  p.pi0_normal = project_l2(normal, scalar_weights_of(WeightSpace::P0, face), face)[0];
  p.pi10_normal = p.pi1_normal - p.pi0_normal;
  p.rm_tangential = project_l2(jt.tangential_part, tangential_weights(face), face);
  return p;
}

std::vector<MinimalFunctional> minimal_functionals(const Face& face) {
  std::vector<MinimalFunctional> out;
  auto normal = scalar_weights_of(WeightSpace::P1, face);
  for (std::size_t i = 0; i < normal.size(); ++i) out.push_back({"normal", static_cast<int>(i), normal[i], ""});
  auto tang = tangential_weights(face);
  for (std::size_t i = 0; i < tang.size(); ++i) out.push_back({"tangential", static_cast<int>(i), tang[i], ""});
  return out;
}

Rational apply_minimal(const MinimalFunctional& fn, const JumpTrace& jt, const Face& face) {
  if (fn.part == "normal") return integrate_face(jt.normal_part * fn.weight[0], face);
  return chart_inner(jt.tangential_part, fn.weight, face);
}

JumpDeficiency jump_deficiency(const Mesh& mesh, const PwField& u) {
  JumpDeficiency d;
  for (int fid : mesh.interior_faces()) {
    const Face& face = mesh.faces()[fid];
    ProjectedJump p = project_jump(face, jump_on_face(mesh, u, fid));
    FaceDeficiency fd;
    fd.face = fid;
    fd.normal_sq = integrate_face(p.pi1_normal * p.pi1_normal, face);
    fd.tangential_sq = chart_inner(p.rm_tangential, p.rm_tangential, face);
    d.total += fd.normal_sq + fd.tangential_sq;
    d.faces.push_back(fd);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Phi, local projection, vertex averaging, norms

PhiResult phi_seminorm(const Mesh& mesh, const PwField& u) {
  auto rmb = basis_RM_boundary(mesh).generators;
  BoundaryMeasure measure = boundary_measure(mesh);
  PhiResult r;
  r.true_measure = measure.true_measure;
  const std::size_t k = rmb.size();
  r.moments.assign(k, Rational(0));
  RationalMatrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (int fid : mesh.boundary_faces()) {
      const Face& face = mesh.faces()[fid];
      r.moments[i] += measure.weights[fid] * integrate_on_face(dot(u.pieces.at(face.first_cell), rmb[i]), face);
    }
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = integrate_boundary(dot(rmb[i], rmb[j]), mesh, measure);
  }
  if (k > 0) {
    auto y = solve(gram, r.moments);
    if (!y) throw std::logic_error("phi_seminorm: singular boundary Gram matrix");
    r.phi_sq = dot(r.moments, *y);
  }
  r.value = std::sqrt(to_double(r.phi_sq));
  return r;
}

bool phi_is_zero(const Mesh& mesh, const PwField& u) {
  for (const auto& m : phi_seminorm(mesh, u).moments) {
    if (sgn(m) != 0) return false;
  }
  return true;
}

RigidMotion local_rm_projection(const VecPoly& v, const Cell& cell) {
  const int d = cell.dim();
  CellIntegrator integ(cell);
  auto conditions = [&](const VecPoly& w) {
    Vector out;
    for (int k = 0; k < d; ++k) out.push_back(integ(w[k]));
    if (d == 2) {
      out.push_back(integ(curl2_vector(w)));
    } else {
      VecPoly c = curl3(w);
      for (int k = 0; k < 3; ++k) out.push_back(integ(c[k]));
    }
    return out;
  };
  auto rm = basis_RM(d).generators;
  std::vector<Vector> cols;
  for (const auto& g : rm) cols.push_back(conditions(g));
  RationalMatrix m = RationalMatrix::from_columns(cols, cols.size());
  auto c = solve(m, conditions(v));
  if (!c) throw std::invalid_argument("local_rm_projection: degenerate cell");
  RigidMotion out = RigidMotion::zero(d);
  for (int k = 0; k < d; ++k) out.translation[k] = (*c)[k];
  for (std::size_t k = 0; k < out.skew.size(); ++k) out.skew[k] = (*c)[d + k];
  return out;
}

PwField vertex_average_E(const Mesh& mesh, const PwField& u) {
  if (!mesh.is_simplicial()) throw std::invalid_argument("vertex_average_E: simplicial mesh required");
  std::map<Point, std::pair<Vector, int>> patch;
  for (const auto& cell : mesh.cells()) {
    const VecPoly& v = u.pieces.at(cell.id());
    if (v.degree() > 1) throw std::invalid_argument("vertex_average_E: piecewise linear input required");
    for (const auto& p : cell.vertices()) {
      Vector val;
      for (std::size_t k = 0; k < v.size(); ++k) val.push_back(v[k](p));
      auto& slot = patch[p];
      slot.first = slot.first.empty() ? val : slot.first + val;
      slot.second += 1;
    }
  }
  PwField out;
  for (const auto& cell : mesh.cells()) {
    auto lambda = cell.barycentric();
    VecPoly w(mesh.dim(), mesh.dim());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      const auto& [sum, count] = patch.at(cell.vertices()[i]);
      w += lambda[i] * VecPoly::constant(mesh.dim(), Rational(1, count) * sum);
    }
    out.pieces.push_back(w);
  }
  return out;
}

Rational h1_seminorm_sq(const Mesh& mesh, const PwField& u) {
  Rational s = 0;
  for (const auto& cell : mesh.cells()) {
    Poly integrand(cell.dim());
    for (const auto& row : jacobian(u.pieces.at(cell.id())))
      for (const auto& e : row) integrand += e * e;
    s += integrate_cell(integrand, cell);
  }
  return s;
}

Rational strain_norm_sq(const Mesh& mesh, const PwField& u) {
  Rational s = 0;
  for (const auto& cell : mesh.cells()) {
    Poly integrand(cell.dim());
    for (const auto& row : strain(u.pieces.at(cell.id())))
      for (const auto& e : row) integrand += e * e;
    s += integrate_cell(integrand, cell);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Piecewise spaces

PiecewiseSpace make_piecewise_space(const Mesh& mesh, const ElementDescriptor& element) {
  PiecewiseSpace s;
  s.name = element.name;
  for (const auto& cell : mesh.cells()) {
    s.cell_bases.push_back(independent_subset(build_local_space(element, cell).generators));
  }
  s.continuity = find_dof_set(element.dof_set_id);
  return s;
}

PiecewiseSpace make_piecewise_space(const Mesh& mesh, const std::string& name,
                                    const std::vector<VecPoly>& local_generators, std::optional<DofSet> continuity) {
  PiecewiseSpace s;
  s.name = name;
  auto basis = independent_subset(local_generators);
  s.cell_bases.assign(mesh.cells().size(), basis);
  s.continuity = std::move(continuity);
  return s;
}

PwField field_from_coefficients(const PiecewiseSpace& space, const Vector& coeffs) {
  PwField u;
  std::size_t k = 0;
  for (const auto& basis : space.cell_bases) {
    VecPoly v(static_cast<int>(basis.at(0).size()), basis.at(0).dim());
    for (const auto& g : basis) v += coeffs.at(k++) * g;
    u.pieces.push_back(v);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Reports

std::string verdict_text(bool holds) { return holds ? "holds" : "fails"; }

std::string to_json(const KornReport& r) {
  nlohmann::ordered_json j;
  j["element"] = r.element;
  j["test"] = r.test;
  j["verdict"] = verdict_text(r.holds);
  j["kernel_dim"] = r.kernel_dim;
  j["expected"] = r.expected;
  if (r.witness) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const auto& p : r.witness->pieces) w.push_back(to_text(p));
    j["witness"] = w;
  }
  nlohmann::ordered_json res = nlohmann::ordered_json::object();
  for (const auto& x : r.residuals) res[x.name] = to_string(x.value);
  j["residuals"] = res;
  j["notes"] = r.notes;
  return j.dump(2);
}

std::string to_text(const KornReport& r) {
  std::ostringstream os;
  os << "element:    " << r.element << "\n";
  os << "test:       " << r.test << "\n";
  os << "verdict:    " << verdict_text(r.holds) << "\n";
  os << "kernel_dim: " << r.kernel_dim << " (expected " << r.expected << ")\n";
  if (r.witness) {
    os << "witness:\n";
    for (std::size_t c = 0; c < r.witness->pieces.size(); ++c) {
      os << "  cell " << c << ": " << to_text(r.witness->pieces[c]) << "\n";
    }
  }
  if (!r.residuals.empty()) {
    os << "residuals:\n";
    for (const auto& x : r.residuals) os << "  " << x.name << " = " << to_string(x.value) << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Decision procedures

KornReport korn_kernel_test(const Mesh& mesh, const PiecewiseSpace& space, const KernelOptions& options) {
  if (space.cell_bases.size() != mesh.cells().size()) throw std::invalid_argument("korn_kernel_test: space/mesh mismatch");
  const int d = mesh.dim();
  Layout l = layout_of(space);
  BoundaryMeasure measure = boundary_measure(mesh);

  std::vector<std::vector<Vector>> blocks{strain_rows(space, l)};
  if (options.include_phi) blocks.push_back(phi_rows(mesh, space, l, basis_RM_boundary(mesh).generators, measure));
  if (options.jump_control == JumpControl::minimal) blocks.push_back(minimal_jump_rows(mesh, space, l));
  if (options.impose_continuity) blocks.push_back(continuity_rows(mesh, space, l));
  RationalMatrix constraints = stack(blocks, l.total);
  auto kernel = nullspace(constraints);

  KornReport r;
  r.element = space.name;
  r.test = "kernel";
  r.kernel_dim = kernel.size();

  // Expected kernel: the global constants (with Phi) or global rigid motions (without),
  // as far as the space contains them.
  std::vector<VecPoly> targets;
  if (options.include_phi) {
    for (int k = 0; k < d; ++k) {
      Vector e(d);
      e[k] = 1;
      targets.push_back(VecPoly::constant(d, e));
    }
  } else {
    targets = basis_RM(d).generators;
  }
  std::vector<Vector> expected;
  for (const auto& t : targets) {
    Vector global(l.total);
    bool inside = true;
    for (std::size_t c = 0; c < space.cell_bases.size() && inside; ++c) {
      auto coords = coordinates_in(space.cell_bases[c], t);
      if (!coords) {
        inside = false;
        break;
      }
      for (std::size_t j = 0; j < coords->size(); ++j) global[l.offset[c] + j] = (*coords)[j];
    }
    if (inside) expected.push_back(global);
  }
  r.expected = matrix_rank_of_columns(expected, l.total);
  bool expected_in_kernel = true;
  for (const auto& e : expected) expected_in_kernel = expected_in_kernel && annihilates(constraints, e);
  if (!expected_in_kernel) r.notes.push_back("an expected kernel field violates a constraint");
  r.holds = expected_in_kernel && r.kernel_dim == r.expected;

  if (!r.holds && !kernel.empty()) {
    std::optional<Vector> pick;
    std::vector<Vector> cols = expected;
    std::size_t base_rank = matrix_rank_of_columns(cols, l.total);
    for (const auto& n : kernel) {
      cols.push_back(n);
      bool outside = matrix_rank_of_columns(cols, l.total) > base_rank;
      cols.pop_back();
      if (!outside) continue;
      if (!pick) pick = n;
      if (sgn(h1_seminorm_sq(mesh, field_from_coefficients(space, n))) > 0) {
        pick = n;
        break;
      }
    }
    if (pick) {
      PwField w = field_from_coefficients(space, *pick);
      r.residuals.push_back({"strain_norm_sq", strain_norm_sq(mesh, w)});
      r.residuals.push_back({"h1_seminorm_sq", h1_seminorm_sq(mesh, w)});
      r.residuals.push_back({"phi_sq", phi_seminorm(mesh, w).phi_sq});
      for (const auto& fd : jump_deficiency(mesh, w).faces) {
        r.residuals.push_back({"face" + std::to_string(fd.face) + ".normal_sq", fd.normal_sq});
        r.residuals.push_back({"face" + std::to_string(fd.face) + ".tangential_sq", fd.tangential_sq});
      }
      r.witness = std::move(w);
    }
  }
  if (options.include_phi) r.notes.push_back(boundary_note(measure));
  r.notes.push_back(std::string("jump control: ") +
                    (options.jump_control == JumpControl::minimal ? "minimal interface functionals" : "none"));
  r.notes.push_back(std::string("continuity: ") +
                    (options.impose_continuity && space.continuity ? space.continuity->id : "none"));
  return r;
}

KornReport dof_coverage_test(const ElementDescriptor& element) {
  Mesh mesh = make_simplex_pair(element.dimension);
  PiecewiseSpace space = make_piecewise_space(mesh, element);
  Layout l = layout_of(space);

  std::vector<Vector> cont = continuity_rows(mesh, space, l);
  if (cont.empty()) throw std::invalid_argument("element " + element.name + " has no shared-face DOFs");
  auto k_basis = nullspace(stack({cont}, l.total));

  std::vector<Vector> jumps = minimal_jump_rows(mesh, space, l);
  RationalMatrix jm = stack({jumps}, l.total);

  // Image of K under the jump functionals.
  std::vector<Vector> images;
  for (const auto& k : k_basis) images.push_back(jm.apply(k));

  KornReport r;
  r.element = element.name;
  r.test = "coverage";
  r.expected = 0;
  r.kernel_dim = matrix_rank_of_columns(images, jm.rows());
  r.holds = r.kernel_dim == 0;
  if (!r.holds) {
    for (std::size_t i = 0; i < k_basis.size(); ++i) {
      bool nonzero = false;
      for (const auto& x : images[i]) nonzero = nonzero || sgn(x) != 0;
      if (!nonzero) continue;
      r.witness = field_from_coefficients(space, k_basis[i]);
      const Face& face = mesh.faces()[mesh.interior_faces().at(0)];
      auto fns = minimal_functionals(face);
      for (std::size_t q = 0; q < fns.size(); ++q) r.residuals.push_back({fns[q].label(), images[i][q]});
      break;
    }
  }
  r.notes.push_back("two-cell configuration; K has dimension " + std::to_string(k_basis.size()));
  r.notes.push_back("continuity: " + element.dof_set_id);
  return r;
}

// ---------------------------------------------------------------------------
// Floating-point estimate

KornEstimate korn_constant_estimate(const Mesh& mesh, const PiecewiseSpace& space, const EstimateOptions& options) {
  using Eigen::MatrixXd;
  Layout l = layout_of(space);
  const std::size_t n = l.total;

  // Exact parts: H1 form, strain form, Phi form.
  RationalMatrix h1(n, n), st(n, n), phi(n, n);
  for (std::size_t c = 0; c < space.cell_bases.size(); ++c) {
    const Cell& cell = mesh.cells()[c];
    CellIntegrator integ(cell);
    const auto& basis = space.cell_bases[c];
    std::vector<std::vector<std::vector<Poly>>> jac, str;
    for (const auto& g : basis) {
      jac.push_back(jacobian(g));
      str.push_back(strain(g));
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        Poly pj(cell.dim()), ps(cell.dim());
        for (int i = 0; i < cell.dim(); ++i)
          for (int k = 0; k < cell.dim(); ++k) {
            pj += jac[a][i][k] * jac[b][i][k];
            ps += str[a][i][k] * str[b][i][k];
          }
        h1(l.offset[c] + a, l.offset[c] + b) = integ(pj);
        st(l.offset[c] + a, l.offset[c] + b) = integ(ps);
      }
    }
  }
  BoundaryMeasure measure = boundary_measure(mesh);
  if (options.include_phi) {
    auto rmb = basis_RM_boundary(mesh).generators;
    auto rows = phi_rows(mesh, space, l, rmb, measure);
    const std::size_t k = rmb.size();
    RationalMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) gram(i, j) = integrate_boundary(dot(rmb[i], rmb[j]), mesh, measure);
    RationalMatrix moments = RationalMatrix::from_rows(rows, n);
    if (k > 0) phi = moments.transpose() * inverse(gram) * moments;
  }

  auto to_eigen = [](const RationalMatrix& m) {
    MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
  };
  MatrixXd a = to_eigen(st) + to_eigen(phi);

  // Jump terms: per face and part, ||projection||^2 = m^T W^{-1} m, rescaled to unit frames,
  // true measure and the (diam f)^{-1} weight.
  if (options.jump_control == JumpControl::minimal) {
    for (int fid : mesh.interior_faces()) {
      const Face& face = mesh.faces()[fid];
      double diam = 0;
      for (const auto& p : face.vertices)
        for (const auto& q : face.vertices) diam = std::max(diam, std::sqrt(to_double(dot(p - q, p - q))));
      double scale = std::sqrt(to_double(face.metric_sq)) / (to_double(dot(face.normal, face.normal)) * diam);
      for (const std::string part : {"normal", "tangential"}) {
        std::vector<MinimalFunctional> kept;
        auto family = options.functionals ? options.functionals(face) : minimal_functionals(face);
        for (const auto& fn : family) {
          if (fn.part == part && !options.dropped.count(fn.label())) kept.push_back(fn);
        }
        if (kept.empty()) continue;
        RationalMatrix w(kept.size(), kept.size());
        std::vector<Vector> rows;
        for (std::size_t i = 0; i < kept.size(); ++i) {
          for (std::size_t j = 0; j < kept.size(); ++j) w(i, j) = chart_inner(kept[i].weight, kept[j].weight, face);
          rows.push_back(interface_row(l, space, face, [&](int, const VecPoly& g) {
            return apply_minimal(kept[i], parts_of(face, fid, restrict_to_face(g, face)), face);
          }));
        }
        RationalMatrix m = RationalMatrix::from_rows(rows, n);
        a += scale * to_eigen(m.transpose() * inverse(w) * m);
      }
    }
  }
  MatrixXd b = to_eigen(h1);

  // Restrict to the subspace cut out by the continuity functionals.
  MatrixXd z = MatrixXd::Identity(n, n);
  auto cont = continuity_rows(mesh, space, l);
  if (!cont.empty()) {
    auto null = nullspace(stack({cont}, n));
    z = to_eigen(RationalMatrix::from_columns(null, n));
  }
  a = z.transpose() * a * z;
  b = z.transpose() * b * z;

  Eigen::SelfAdjointEigenSolver<MatrixXd> eb(b);
  const double bmax = eb.eigenvalues().cwiseAbs().maxCoeff();
  const double tol = 1e-10 * std::max(1.0, bmax);
  std::vector<int> pos, ker;
  for (int i = 0; i < eb.eigenvalues().size(); ++i) (eb.eigenvalues()(i) > tol ? pos : ker).push_back(i);
  if (pos.empty()) throw std::runtime_error("korn_constant_estimate: H1 form vanishes on the space");
  MatrixXd wr(b.rows(), pos.size()), wk(b.rows(), ker.size());
  for (std::size_t i = 0; i < pos.size(); ++i) wr.col(i) = eb.eigenvectors().col(pos[i]) / std::sqrt(eb.eigenvalues()(pos[i]));
  for (std::size_t i = 0; i < ker.size(); ++i) wk.col(i) = eb.eigenvectors().col(ker[i]);

  // Minimize over the H1-null directions: Schur complement of the RHS form.
  MatrixXd s = wr.transpose() * a * wr;
  if (!ker.empty()) {
    MatrixXd akk = wk.transpose() * a * wk;
    MatrixXd akr = wk.transpose() * a * wr;
    Eigen::SelfAdjointEigenSolver<MatrixXd> ek(akk);
    const double kmax = std::max(1.0, ek.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::VectorXd inv = ek.eigenvalues();
    for (int i = 0; i < inv.size(); ++i) inv(i) = std::abs(inv(i)) > 1e-12 * kmax ? 1.0 / inv(i) : 0.0;
    MatrixXd pinv = ek.eigenvectors() * inv.asDiagonal() * ek.eigenvectors().transpose();
    s -= akr.transpose() * pinv * akr;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);

  KornEstimate e;
  e.value = es.eigenvalues().minCoeff();
  e.dimension = static_cast<std::size_t>(z.cols());
  e.weights = "jump terms weighted by (diam f)^-1 with true face measure and unit frames; " + boundary_note(measure);
  return e;
}

}  // namespace korn
