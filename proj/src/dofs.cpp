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

#include "korn/dofs.hpp"

#include <map>
#include <stdexcept>

#include "korn/integrate.hpp"

namespace korn {

namespace {

template <typename E>
E lookup(const std::map<std::string, E>& table, const std::string& key, const char* what) {
  auto it = table.find(key);
  if (it == table.end()) throw std::invalid_argument(std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

template <typename E>
std::string reverse_lookup(const std::map<std::string, E>& table, E value) {
  for (const auto& [k, v] : table) {
    if (v == value) return k;
  }
  return "?";
}

const std::map<std::string, Selector>& selector_names() {
  static const std::map<std::string, Selector> t = {{"normal", Selector::normal},
                                                    {"tangential2d", Selector::tangential2d},
                                                    {"cross_normal3d", Selector::cross_normal3d},
                                                    {"full_vector", Selector::full_vector},
                                                    {"interior", Selector::interior}};
  return t;
}

const std::map<std::string, WeightSpace>& weight_names() {
  static const std::map<std::string, WeightSpace> t = {{"P0", WeightSpace::P0},
                                                       {"P1", WeightSpace::P1},
                                                       {"RT0", WeightSpace::RT0},
                                                       {"P0_tangent", WeightSpace::P0_tangent},
                                                       {"constants", WeightSpace::constants}};
  return t;
}

const std::map<std::string, DofDomain>& domain_names() {
  static const std::map<std::string, DofDomain> t = {{"each_face", DofDomain::each_face}, {"cell", DofDomain::cell}};
  return t;
}

const std::map<std::string, DofSet>& dof_sets() {
  using S = Selector;
  using W = WeightSpace;
  const DofDomain F = DofDomain::each_face;
  const DofDomain C = DofDomain::cell;
  static const std::map<std::string, DofSet> sets = [&] {
    std::vector<DofSet> all = {
        {"rt-2d", {{S::normal, W::P1, F}, {S::interior, W::constants, C}, {S::tangential2d, W::P0, F}}},
        {"bdm-2d", {{S::normal, W::P1, F}, {S::tangential2d, W::P0, F}}},
        {"rt-3d-rt0", {{S::normal, W::P1, F}, {S::interior, W::constants, C}, {S::cross_normal3d, W::RT0, F}}},
        {"bdm-3d-rt0", {{S::normal, W::P1, F}, {S::cross_normal3d, W::RT0, F}}},
        {"rt-3d-p0t", {{S::normal, W::P1, F}, {S::interior, W::constants, C}, {S::cross_normal3d, W::P0_tangent, F}}},
        {"bdm-3d-p0t", {{S::normal, W::P1, F}, {S::cross_normal3d, W::P0_tangent, F}}},
        {"cr-mean", {{S::full_vector, W::constants, F}}},
        {"p1-trace", {{S::full_vector, W::P1, F}}},
    };
    std::map<std::string, DofSet> m;
    for (auto& s : all) m.emplace(s.id, s);
    return m;
  }();
  return sets;
}

VecPoly chart_constant(const Face& face, const Vector& c) { return VecPoly::constant(face.dim - 1, c); }

std::vector<Poly> scalar_weights(WeightSpace w, const Face& face) {
  const int m = face.dim - 1;
  std::vector<Poly> out{Poly::constant(m, 1)};
  if (w == WeightSpace::P0) return out;
  if (w != WeightSpace::P1) throw std::invalid_argument("scalar selector needs P0 or P1 weights");
  for (const auto& t : face.tangents) {
    Poly lin = Poly::affine(-dot(t, face.barycenter), t);
    out.push_back(restrict_to_face(lin, face));
  }
  return out;
}

}  // namespace

std::string to_string(Selector s) { return reverse_lookup(selector_names(), s); }
std::string to_string(WeightSpace w) { return reverse_lookup(weight_names(), w); }
std::string to_string(DofDomain d) { return reverse_lookup(domain_names(), d); }
Selector parse_selector(const std::string& s) { return lookup(selector_names(), s, "selector"); }
WeightSpace parse_weight_space(const std::string& s) { return lookup(weight_names(), s, "weight space"); }
DofDomain parse_dof_domain(const std::string& s) { return lookup(domain_names(), s, "DOF domain"); }

const DofSet& find_dof_set(const std::string& id) {
  auto it = dof_sets().find(id);
  if (it == dof_sets().end()) throw std::invalid_argument("unknown DOF set '" + id + "'");
  return it->second;
}

std::vector<std::string> dof_set_ids() {
  std::vector<std::string> out;
  for (const auto& kv : dof_sets()) out.push_back(kv.first);
  return out;
}

std::vector<VecPoly> face_weights(WeightSpace w, Selector s, const Face& face) {
  const int d = face.dim;
  std::vector<VecPoly> out;
  switch (s) {
    case Selector::normal:
    case Selector::tangential2d:
      if (s == Selector::tangential2d && d != 2) throw std::invalid_argument("tangential2d selector needs a 2D face");
      for (auto& p : scalar_weights(w, face)) out.push_back(VecPoly::scalar(std::move(p)));
      return out;
    case Selector::cross_normal3d:
      if (d != 3) throw std::invalid_argument("cross_normal3d selector needs a 3D face");
      if (w == WeightSpace::RT0) return basis_RT0_face(face).generators;
      if (w == WeightSpace::P0_tangent) {
        for (const auto& t : face.tangents) out.push_back(chart_constant(face, t));
        return out;
      }
      throw std::invalid_argument("cross_normal3d selector needs RT0 or P0_tangent weights");
    case Selector::full_vector: {
      std::vector<Poly> scalars =
          w == WeightSpace::P1 ? scalar_weights(WeightSpace::P1, face) : std::vector<Poly>{Poly::constant(d - 1, 1)};
      if (w != WeightSpace::P1 && w != WeightSpace::P0 && w != WeightSpace::constants) {
        throw std::invalid_argument("full_vector selector needs P0, P1 or constants weights");
      }
      for (int k = 0; k < d; ++k) {
        for (const auto& q : scalars) {
          VecPoly v(d, d - 1);
          v[k] = q;
          out.push_back(v);
        }
      }
      return out;
    }
    case Selector::interior:
      break;
  }
  throw std::invalid_argument("interior selector has no face weights");
}

std::vector<DofFunctional> face_dofs(const DofSet& set, const Face& face) {
  std::vector<DofFunctional> out;
  for (const auto& e : set.entries) {
    if (e.domain != DofDomain::each_face) continue;
    auto weights = face_weights(e.weight_space, e.selector, face);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      DofFunctional f;
      f.selector = e.selector;
      f.face = face;
      f.weight = std::move(weights[i]);
      f.label = "face" + std::to_string(face.local_index) + ":" + to_string(e.selector) + ":" +
                to_string(e.weight_space) + "[" + std::to_string(i) + "]";
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<DofFunctional> build_dofs(const DofSet& set, const Cell& cell) {
  std::vector<DofFunctional> out;
  for (const auto& face : faces_of(cell)) {
    auto fd = face_dofs(set, face);
    out.insert(out.end(), fd.begin(), fd.end());
  }
  for (const auto& e : set.entries) {
    if (e.domain != DofDomain::cell) continue;
    if (e.selector != Selector::interior || e.weight_space != WeightSpace::constants) {
      throw std::invalid_argument("cell moments support the interior selector with constant weights only");
    }
    for (int k = 0; k < cell.dim(); ++k) {
      Vector c(cell.dim());
      c[k] = 1;
      DofFunctional f;
      f.selector = Selector::interior;
      f.weight = VecPoly::constant(cell.dim(), c);
      f.label = "cell:interior:e" + std::to_string(k);
      out.push_back(std::move(f));
    }
  }
  return out;
}

namespace {

// Selector applied to a field already restricted to the face; the frame vectors are
// constant, so restriction commutes with the dot and cross products.
Poly face_integrand(const DofFunctional& dof, const VecPoly& restricted) {
  const Face& f = *dof.face;
  if (static_cast<int>(restricted.size()) != f.dim) throw std::invalid_argument("eval_dof: field/face dimension mismatch");
  switch (dof.selector) {
    case Selector::normal:
      return dot(restricted, f.normal) * dof.weight[0];
    case Selector::tangential2d:
      if (f.dim != 2) throw std::invalid_argument("tangential2d selector on a 3D face");
      return dot(restricted, f.tangents[0]) * dof.weight[0];
    case Selector::cross_normal3d:
      if (f.dim != 3) throw std::invalid_argument("cross_normal3d selector on a 2D face");
      return dot(cross(restricted, f.normal), dof.weight);
    case Selector::full_vector:
      return dot(restricted, dof.weight);
    case Selector::interior:
      break;
  }
  throw std::logic_error("face_integrand: interior selector");
}

}  // namespace

Rational eval_dof(const DofFunctional& dof, const VecPoly& v, const Cell& cell) {
  if (dof.selector == Selector::interior) return integrate_cell(dot(v, dof.weight), cell);
  if (!dof.face) throw std::invalid_argument("eval_dof: face functional without a face");
  if (static_cast<int>(v.size()) != dof.face->dim) throw std::invalid_argument("eval_dof: field/face dimension mismatch");
  return integrate_face(face_integrand(dof, restrict_to_face(v, *dof.face)), *dof.face);
}

Vector eval_dofs(const std::vector<DofFunctional>& dofs, const VecPoly& v, const Cell& cell) {
  Vector out;
  out.reserve(dofs.size());
  for (const auto& d : dofs) out.push_back(eval_dof(d, v, cell));
  return out;
}

RationalMatrix dof_matrix(const std::vector<VecPoly>& generators, const std::vector<DofFunctional>& dofs,
                          const Cell& cell) {
  // Group functionals by face so each generator is restricted once per face.
  std::vector<FaceRestrictor> restrictors;
  std::vector<int> which(dofs.size(), -1);
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    if (!dofs[i].face) continue;
    for (std::size_t r = 0; r < restrictors.size() && which[i] < 0; ++r) {
      if (restrictors[r].face().vertices == dofs[i].face->vertices) which[i] = static_cast<int>(r);
    }
    if (which[i] < 0) {
      which[i] = static_cast<int>(restrictors.size());
      restrictors.emplace_back(*dofs[i].face);
    }
  }
  RationalMatrix m(dofs.size(), generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    std::vector<std::optional<VecPoly>> restricted(restrictors.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (which[i] < 0) {
        m(i, j) = eval_dof(dofs[i], generators[j], cell);
        continue;
      }
      auto r = static_cast<std::size_t>(which[i]);
      if (static_cast<int>(generators[j].size()) != dofs[i].face->dim) {
        throw std::invalid_argument("eval_dof: field/face dimension mismatch");
      }
      if (!restricted[r]) restricted[r] = restrictors[r](generators[j]);
      m(i, j) = integrate_face(face_integrand(dofs[i], *restricted[r]), *dofs[i].face);
    }
  }
  return m;
}

std::string to_string(UnisolvenceVerdict v) {
  switch (v) {
    case UnisolvenceVerdict::unisolvent: return "unisolvent";
    case UnisolvenceVerdict::singular: return "singular";
    case UnisolvenceVerdict::not_square: return "not-square";
  }
  return "?";
}

UnisolvenceResult unisolvence(const SpaceBasis& space, const std::vector<DofFunctional>& dofs, const Cell& cell) {
  auto basis = independent_subset(space.generators);
  UnisolvenceResult r;
  r.dof_count = dofs.size();
  r.dimension = basis.size();
  RationalMatrix m = dof_matrix(basis, dofs, cell);
  r.rank = rank(m);
  // A nonzero member killed by every functional exists whenever the columns are dependent.
  auto null = nullspace(m);
  if (!null.empty()) {
    VecPoly w(static_cast<int>(basis[0].size()), basis[0].dim());
    for (std::size_t j = 0; j < basis.size(); ++j) w += null[0][j] * basis[j];
    r.nullvector = w;
  }
  if (r.dof_count != r.dimension) {
    r.verdict = UnisolvenceVerdict::not_square;
    return r;
  }
  r.determinant = determinant(m);
  r.verdict = sgn(r.determinant) != 0 ? UnisolvenceVerdict::unisolvent : UnisolvenceVerdict::singular;
  return r;
}

std::size_t span_dimension(const std::vector<VecPoly>& generators) { return span_rank(generators); }

VecPoly interpolate(const SpaceBasis& space, const std::vector<DofFunctional>& dofs, const Cell& cell,
                    const Vector& values) {
  auto basis = independent_subset(space.generators);
  RationalMatrix m = dof_matrix(basis, dofs, cell);
  if (m.rows() != m.cols()) throw std::invalid_argument("interpolate: DOF set is not square");
  auto c = solve(m, values);
  if (!c || sgn(determinant(m)) == 0) throw std::invalid_argument("interpolate: DOF matrix is singular");
  VecPoly out(static_cast<int>(basis[0].size()), basis[0].dim());
  for (std::size_t j = 0; j < basis.size(); ++j) out += (*c)[j] * basis[j];
  return out;
}

}  // namespace korn
