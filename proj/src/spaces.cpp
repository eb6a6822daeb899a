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

#include "korn/spaces.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

#include "korn/integrate.hpp"

namespace korn {

namespace {

using Key = std::pair<std::size_t, Exponent>;

std::map<Key, std::size_t> collect_keys(const std::vector<const VecPoly*>& fields) {
  std::map<Key, std::size_t> keys;
  for (const VecPoly* v : fields) {
    for (std::size_t c = 0; c < v->size(); ++c) {
      for (const auto& term : (*v)[c].terms()) keys.emplace(Key{c, term.first}, 0);
    }
  }
  std::size_t i = 0;
  for (auto& kv : keys) kv.second = i++;
  return keys;
}

RationalMatrix build_matrix(const std::vector<const VecPoly*>& fields) {
  auto keys = collect_keys(fields);
  RationalMatrix m(keys.size(), fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    const VecPoly& v = *fields[j];
    for (std::size_t c = 0; c < v.size(); ++c) {
      for (const auto& [e, coef] : v[c].terms()) m(keys.at(Key{c, e}), j) = coef;
    }
  }
  return m;
}

std::vector<const VecPoly*> pointers(const std::vector<VecPoly>& gens) {
  std::vector<const VecPoly*> out;
  for (const auto& g : gens) out.push_back(&g);
  return out;
}

VecPoly combine(const std::vector<VecPoly>& gens, const Vector& coeffs) {
  VecPoly out(static_cast<int>(gens.at(0).size()), gens.at(0).dim());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (sgn(coeffs[j]) != 0) out += coeffs[j] * gens[j];
  }
  return out;
}

/// Nullspace of a linear map given column-wise by its action on each unknown.
std::vector<VecPoly> constrained_subspace(const std::vector<VecPoly>& unknowns,
                                          const std::function<Vector(const VecPoly&)>& constraints) {
  std::vector<Vector> cols;
  for (const auto& u : unknowns) cols.push_back(constraints(u));
  std::size_t rows = cols.empty() ? 0 : cols[0].size();
  RationalMatrix m = RationalMatrix::from_columns(cols, rows);
  std::vector<VecPoly> out;
  for (const auto& n : nullspace(m)) out.push_back(combine(unknowns, n));
  return out;
}

Cell require_simplex(const Cell& cell, const char* what) {
  if (cell.kind() != CellKind::simplex) throw std::invalid_argument(std::string(what) + ": simplex required");
  return cell;
}

Poly one(int dim) { return Poly::constant(dim, 1); }

VecPoly unit_field(int dim, int k) {
  Vector e(dim);
  e[k] = 1;
  return VecPoly::constant(dim, e);
}

}  // namespace

SpaceBasis make_space(std::string name, std::vector<VecPoly> generators) {
  SpaceBasis s;
  s.name = std::move(name);
  s.rank = span_rank(generators);
  s.generators = std::move(generators);
  return s;
}

RationalMatrix coefficient_matrix(const std::vector<VecPoly>& generators) {
  return build_matrix(pointers(generators));
}

std::size_t span_rank(const std::vector<VecPoly>& generators) {
  if (generators.empty()) return 0;
  return rank(coefficient_matrix(generators));
}

bool in_span(const std::vector<VecPoly>& generators, const VecPoly& v) {
  if (v.is_zero()) return true;
  auto ptrs = pointers(generators);
  std::size_t r0 = generators.empty() ? 0 : rank(build_matrix(ptrs));
  ptrs.push_back(&v);
  return rank(build_matrix(ptrs)) == r0;
}

bool span_equal(const std::vector<VecPoly>& a, const std::vector<VecPoly>& b) {
  std::vector<VecPoly> both = a;
  both.insert(both.end(), b.begin(), b.end());
  std::size_t r = span_rank(both);
  return span_rank(a) == r && span_rank(b) == r;
}

std::vector<VecPoly> independent_subset(const std::vector<VecPoly>& generators) {
  std::vector<VecPoly> out;
  if (generators.empty()) return out;
  for (std::size_t j : independent_columns(coefficient_matrix(generators))) out.push_back(generators[j]);
  return out;
}

std::optional<Vector> coordinates_in(const std::vector<VecPoly>& generators, const VecPoly& v) {
  auto ptrs = pointers(generators);
  ptrs.push_back(&v);
  RationalMatrix full = build_matrix(ptrs);
  RationalMatrix a(full.rows(), generators.size());
  Vector b(full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i) {
    for (std::size_t j = 0; j < generators.size(); ++j) a(i, j) = full(i, j);
    b[i] = full(i, generators.size());
  }
  return solve(a, b);
}

// ---------------------------------------------------------------------------
// Rigid motions

std::size_t rm_dimension(int dim) { return static_cast<std::size_t>(dim + dim * (dim - 1) / 2); }

VecPoly RigidMotion::field() const {
  const int d = static_cast<int>(translation.size());
  VecPoly v = VecPoly::constant(d, translation);
  if (d == 2) {
    v[0] -= skew[0] * Poly::variable(2, 1);
    v[1] += skew[0] * Poly::variable(2, 0);
  } else if (d == 3) {
    Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
    v[0] += skew[0] * y + skew[1] * z;
    v[1] += -skew[0] * x + skew[2] * z;
    v[2] += -skew[1] * x - skew[2] * y;
  } else {
    throw std::invalid_argument("RigidMotion: dimension must be 2 or 3");
  }
  return v;
}

RigidMotion RigidMotion::zero(int dim) {
  return RigidMotion{Vector(dim), Vector(dim == 2 ? 1 : 3)};
}

SpaceBasis basis_RM(int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("basis_RM: dimension must be 2 or 3");
  std::vector<VecPoly> gens;
  for (int k = 0; k < dim; ++k) gens.push_back(unit_field(dim, k));
  const int nskew = dim == 2 ? 1 : 3;
  for (int k = 0; k < nskew; ++k) {
    RigidMotion m = RigidMotion::zero(dim);
    m.skew[k] = 1;
    gens.push_back(m.field());
  }
  return make_space("RM", std::move(gens));
}

SpaceBasis basis_RM_boundary(const Mesh& mesh) {
  const int d = mesh.dim();
  SpaceBasis rm = basis_RM(d);
  BoundaryMeasure measure = boundary_measure(mesh);
  auto gens = constrained_subspace(rm.generators, [&](const VecPoly& m) {
    Vector out(d);
    for (int k = 0; k < d; ++k) out[k] = integrate_boundary(m[k], mesh, measure);
    return out;
  });
  return make_space("RM_boundary", std::move(gens));
}

std::vector<VecPoly> rt0_face_fields(const Face& face) {
  if (face.dim != 3) throw std::invalid_argument("RT0(f) requires a face of a 3D cell; use P0 on 2D edges");
  std::vector<VecPoly> out;
  out.push_back(VecPoly::constant(3, face.tangents[0]));
  out.push_back(VecPoly::constant(3, face.tangents[1]));
  VecPoly radial(3, 3);
  for (int k = 0; k < 3; ++k) radial[k] = Poly::variable(3, k) - Poly::constant(3, face.barycenter[k]);
  out.push_back(radial);
  return out;
}

SpaceBasis basis_RT0_face(const Face& face) {
  std::vector<VecPoly> gens;
  for (const auto& g : rt0_face_fields(face)) gens.push_back(restrict_to_face(g, face));
  return make_space("RT0(f)", std::move(gens));
}

SpaceBasis trace_tangential_rm(const Face& face, int dim) {
  if (face.dim != dim) throw std::invalid_argument("trace_tangential_rm: face dimension mismatch");
  std::vector<VecPoly> gens;
  for (const auto& v : basis_RM(dim).generators) {
    if (dim == 2) {
      gens.push_back(VecPoly::scalar(restrict_to_face(dot(v, face.tangents[0]), face)));
    } else {
      gens.push_back(restrict_to_face(cross(v, face.normal), face));
    }
  }
  return make_space("tangential RM trace", std::move(gens));
}

// ---------------------------------------------------------------------------
// Bubbles and polynomial families

Poly bubble_cell(const Cell& cell) {
  require_simplex(cell, "bubble_cell");
  Poly b = one(cell.dim());
  for (const auto& l : cell.barycentric()) b *= l;
  return b;
}

Poly bubble_face(const Cell& cell, int face) {
  require_simplex(cell, "bubble_face");
  auto lambda = cell.barycentric();
  if (face < 0 || face >= static_cast<int>(lambda.size())) throw std::invalid_argument("bubble_face: bad face index");
  Poly b = one(cell.dim());
  for (int j = 0; j < static_cast<int>(lambda.size()); ++j) {
    if (j != face) b *= lambda[j];
  }
  return b;
}

Poly edge_bubble_b(const Cell& cell) {
  require_simplex(cell, "edge_bubble_b");
  if (cell.dim() != 2) throw std::invalid_argument("edge_bubble_b: triangle required");
  auto l = cell.barycentric();
  return l[0] * l[1] + l[1] * l[2] + l[2] * l[0] - Poly::constant(2, Rational(1, 6));
}

SpaceBasis basis_P(int dim, int k) {
  std::vector<Exponent> exps;
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b <= (dim >= 2 ? k - a : 0); ++b)
      for (int c = 0; c <= (dim >= 3 ? k - a - b : 0); ++c)
        exps.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)});
  std::sort(exps.begin(), exps.end(), GradedLex{});
  std::vector<VecPoly> gens;
  for (const auto& e : exps) gens.push_back(VecPoly::scalar(Poly::monomial(dim, e)));
  return make_space("P" + std::to_string(k), std::move(gens));
}

SpaceBasis basis_vector_P(int dim, int k) {
  auto scalars = basis_P(dim, k).generators;
  std::vector<VecPoly> gens;
  for (int c = 0; c < dim; ++c) {
    for (const auto& s : scalars) {
      VecPoly v(dim, dim);
      v[c] = s[0];
      gens.push_back(v);
    }
  }
  return make_space("(P" + std::to_string(k) + ")^" + std::to_string(dim), std::move(gens));
}

SpaceBasis basis_CR(int dim) {
  SpaceBasis s = basis_vector_P(dim, 1);
  s.name = "CR";
  return s;
}

SpaceBasis basis_BDM1(int dim) {
  SpaceBasis s = basis_vector_P(dim, 1);
  s.name = "BDM1";
  return s;
}

SpaceBasis basis_RT1(int dim) {
  auto gens = basis_vector_P(dim, 1).generators;
  VecPoly x(dim, dim);
  for (int k = 0; k < dim; ++k) x[k] = Poly::variable(dim, k);
  for (int k = 0; k < dim; ++k) gens.push_back(Poly::variable(dim, k) * x);
  return make_space("RT1", std::move(gens));
}

// ---------------------------------------------------------------------------
// Enrichment families

YKind parse_ykind(const std::string& name) {
  static const std::map<std::string, YKind> names = {
      {"Y1", YKind::Y1}, {"Y2", YKind::Y2}, {"Y3", YKind::Y3}, {"Y4", YKind::Y4}, {"Y5", YKind::Y5}};
  auto it = names.find(name);
  if (it == names.end()) throw std::invalid_argument("unknown enrichment kind '" + name + "'");
  return it->second;
}

std::string to_string(YKind kind) {
  switch (kind) {
    case YKind::Y1: return "Y1";
    case YKind::Y2: return "Y2";
    case YKind::Y3: return "Y3";
    case YKind::Y4: return "Y4";
    case YKind::Y5: return "Y5";
  }
  return "?";
}

namespace {

std::vector<VecPoly> y3_removed(const Cell& cell) {
  auto l = cell.barycentric();
  std::vector<VecPoly> out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    out.push_back((l[i] - Poly::constant(3, Rational(1, 3))) * grad(l[i]));
  }
  return out;
}

void require_dim(const Cell& cell, int dim, YKind kind) {
  if (cell.dim() != dim) {
    throw std::invalid_argument(to_string(kind) + " is defined on " + std::to_string(dim) + "D cells only");
  }
}

}  // namespace

SpaceBasis basis_Y(YKind kind, const Cell& cell) {
  require_simplex(cell, "basis_Y");
  switch (kind) {
    case YKind::Y1: {
      require_dim(cell, 2, kind);
      SpaceBasis s = basis_P(2, 1);
      s.name = "Y1";
      return s;
    }
    case YKind::Y2: {
      require_dim(cell, 3, kind);
      SpaceBasis s = basis_vector_P(3, 1);
      s.name = "Y2";
      return s;
    }
    case YKind::Y3: {
      require_dim(cell, 3, kind);
      // L2(T)-orthogonal complement of the removed fields inside (P1)^3.
      auto removed = y3_removed(cell);
      CellIntegrator integ(cell);
      auto gens = constrained_subspace(basis_vector_P(3, 1).generators, [&](const VecPoly& v) {
        Vector out;
        for (const auto& r : removed) out.push_back(integ(dot(v, r)));
        return out;
      });
      return make_space("Y3", std::move(gens));
    }
    case YKind::Y4: {
      require_dim(cell, 2, kind);
      std::vector<VecPoly> gens;
      for (int f = 0; f < 3; ++f) gens.push_back(VecPoly::scalar(bubble_face(cell, f)));
      return make_space("Y4", std::move(gens));
    }
    case YKind::Y5: {
      require_dim(cell, 3, kind);
      auto faces = faces_of(cell);
      std::vector<VecPoly> gens;
      for (int f = 0; f < 4; ++f) {
        Poly bf = bubble_face(cell, f);
        for (int k = 0; k < 3; ++k) {
          Vector e(3);
          e[k] = 1;
          gens.push_back(bf * VecPoly::constant(3, cross(e, faces[f].normal)));
        }
      }
      return make_space("Y5", std::move(gens));
    }
  }
  throw std::invalid_argument("basis_Y: unknown kind");
}

SpaceBasis basis_Y3_greedy(const Cell& cell) {
  require_simplex(cell, "basis_Y3_greedy");
  if (cell.dim() != 3) throw std::invalid_argument("Y3 is defined on 3D cells only");
  std::vector<VecPoly> pool = y3_removed(cell);
  std::vector<VecPoly> kept;
  for (const auto& m : basis_vector_P(3, 1).generators) {
    if (!in_span(pool, m)) {
      pool.push_back(m);
      kept.push_back(m);
    }
  }
  return make_space("Y3 (greedy complement)", std::move(kept));
}

SpaceBasis basis_Qfstar(const Cell& cell, int face) {
  require_simplex(cell, "basis_Qfstar");
  if (cell.dim() != 3) throw std::invalid_argument("basis_Qfstar: tetrahedron required");
  auto faces = faces_of(cell);
  if (face < 0 || face > 3) throw std::invalid_argument("basis_Qfstar: bad face index");
  const Vector& n = faces[face].normal;
  std::vector<VecPoly> image;
  for (const auto& q : basis_RM(3).generators) image.push_back(cross(q, n));
  image = independent_subset(image);

  Poly weight = bubble_cell(cell) * bubble_face(cell, face);
  CellIntegrator integ(cell);
  auto gens = constrained_subspace(image, [&](const VecPoly& g) {
    Vector out;
    for (int k = 0; k < 3; ++k) {
      Vector e(3);
      e[k] = 1;
      out.push_back(integ(weight * dot(g, cross(e, n))));
    }
    return out;
  });
  return make_space("Q*_f", std::move(gens));
}

SpaceBasis basis_Qstar(const Cell& cell) {
  std::vector<VecPoly> gens;
  for (int f = 0; f < 4; ++f) {
    Poly bf = bubble_face(cell, f);
    for (const auto& g : basis_Qfstar(cell, f).generators) gens.push_back(bf * g);
  }
  return make_space("Q*", std::move(gens));
}

SpaceBasis basis_MTW(const Cell& cell) {
  require_simplex(cell, "basis_MTW");
  if (cell.dim() != 2) throw std::invalid_argument("basis_MTW: triangle required");
  auto faces = faces_of(cell);
  auto gens = constrained_subspace(basis_vector_P(2, 3).generators, [&](const VecPoly& v) {
    Vector out;
    Poly dv = div(v);
    // div v in P0: every non-constant coefficient of the quadratic divergence vanishes.
    for (const auto& g : basis_P(2, 2).generators) {
      const Exponent& e = g[0].terms().begin()->first;
      if (total_degree(e) > 0) out.push_back(dv.coeff(e));
    }
    // v.n restricted to each edge is affine in the chart coordinate.
    for (const auto& f : faces) {
      Poly vn = restrict_to_face(dot(v, f.normal), f);
      out.push_back(vn.coeff({2, 0, 0}));
      out.push_back(vn.coeff({3, 0, 0}));
    }
    return out;
  });
  return make_space("MTW", std::move(gens));
}

SpaceBasis basis_enrichedCR_psi(const Cell& cell) {
  require_simplex(cell, "basis_enrichedCR_psi");
  if (cell.dim() != 2) throw std::invalid_argument("basis_enrichedCR_psi: triangle required");
  auto gens = basis_CR(2).generators;
  auto l = cell.barycentric();
  auto faces = faces_of(cell);
  Poly b = edge_bubble_b(cell);
  // psi for the edge opposite vertex k joins vertices i < j.
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    if (i > j) std::swap(i, j);
    gens.push_back((b * (l[i] - l[j])) * VecPoly::constant(2, faces[k].normal));
  }
  return make_space("E_CR (psi)", std::move(gens));
}

std::vector<VecPoly> curl_bubble(const Cell& cell, const SpaceBasis& y) {
  Poly bt = bubble_cell(cell);
  std::vector<VecPoly> out;
  for (const auto& g : y.generators) {
    if (cell.dim() == 2) {
      if (g.size() != 1) throw std::invalid_argument("curl_bubble: 2D enrichment must be scalar");
      out.push_back(curl2_scalar(bt * g[0]));
    } else {
      if (g.size() != 3) throw std::invalid_argument("curl_bubble: 3D enrichment must be a 3-vector");
      out.push_back(curl3(bt * g));
    }
  }
  return out;
}

SpaceBasis assemble_enriched(const SpaceBasis& v0, const SpaceBasis& y, const Cell& cell) {
  auto curls = curl_bubble(cell, y);
  for (const auto& c : curls) {
    if (!div(c).is_zero()) throw std::logic_error("assemble_enriched: curl generator is not divergence-free");
  }
  std::vector<VecPoly> gens = v0.generators;
  gens.insert(gens.end(), curls.begin(), curls.end());
  return make_space(v0.name + " + curl(bT " + y.name + ")", std::move(gens));
}

SpaceBasis basis_enrichedCR_curl(const Cell& cell) {
  require_simplex(cell, "basis_enrichedCR_curl");
  SpaceBasis y = cell.dim() == 2 ? basis_Y(YKind::Y1, cell) : basis_Y(YKind::Y2, cell);
  SpaceBasis s = assemble_enriched(basis_CR(cell.dim()), y, cell);
  s.name = "E_CR (curl)";
  return s;
}

}  // namespace korn
