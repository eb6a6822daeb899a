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

#include "korn/integrate.hpp"

#include <stdexcept>

namespace korn {

namespace {

Rational integrate_reference(const Poly& p, CellKind kind) {
  return kind == CellKind::simplex ? integrate_reference_simplex(p) : integrate_unit_box(p);
}

}  // namespace

Rational integrate_cell(const Poly& p, const Cell& cell) {
  if (p.is_zero()) return 0;
  if (p.dim() != cell.dim()) throw std::invalid_argument("integrate_cell: dimension mismatch");
  Poly ref = pullback(p, cell.reference_map());
  return cell.jacobian() * integrate_reference(ref, cell.kind());
}

Poly restrict_to_face(const Poly& p, const Face& face) {
  if (p.is_zero()) return Poly(face.dim - 1);
  return pullback(p, face.chart);
}

VecPoly restrict_to_face(const VecPoly& v, const Face& face) {
  std::vector<Poly> comps;
  for (const auto& c : v.components()) comps.push_back(restrict_to_face(c, face));
  return VecPoly(std::move(comps));
}

Rational integrate_face(const Poly& chart_poly, const Face& face) {
  if (chart_poly.is_zero()) return 0;
  if (chart_poly.dim() != face.dim - 1) throw std::invalid_argument("integrate_face: chart dimension mismatch");
  return integrate_reference(chart_poly, face.chart_kind);
}

Rational integrate_on_face(const Poly& p, const Face& face) { return integrate_face(restrict_to_face(p, face), face); }

BoundaryMeasure boundary_measure(const Mesh& mesh) {
  BoundaryMeasure m;
  m.weights.assign(mesh.faces().size(), Rational(0));
  m.true_measure = true;
  for (int id : mesh.boundary_faces()) {
    if (!mesh.faces()[id].metric) m.true_measure = false;
  }
  for (int id : mesh.boundary_faces()) {
    m.weights[id] = m.true_measure ? *mesh.faces()[id].metric : Rational(1);
  }
  return m;
}

Rational integrate_boundary(const Poly& p, const Mesh& mesh, const BoundaryMeasure& measure) {
  Rational s = 0;
  for (int id : mesh.boundary_faces()) s += measure.weights[id] * integrate_on_face(p, mesh.faces()[id]);
  return s;
}

Rational CellIntegrator::operator()(const Poly& p) {
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    auto it = moments_.find(e);
    if (it == moments_.end()) {
      it = moments_.emplace(e, integrate_cell(Poly::monomial(cell_.dim(), e), cell_)).first;
    }
    s += c * it->second;
  }
  return s;
}

Rational FaceIntegrator::operator()(const Poly& p) {
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    auto it = moments_.find(e);
    if (it == moments_.end()) {
      it = moments_.emplace(e, integrate_on_face(Poly::monomial(face_.dim, e), face_)).first;
    }
    s += c * it->second;
  }
  return s;
}

FaceRestrictor::FaceRestrictor(const Face& face) : face_(face) {
  const AffineMap& m = face_.chart;
  for (int i = 0; i < m.out_dim; ++i) coord_.push_back(Poly::affine(m.offset[i], m.matrix[i]));
  images_.emplace(Exponent{}, Poly::constant(m.in_dim, 1));
}

const Poly& FaceRestrictor::image(const Exponent& e) {
  auto it = images_.find(e);
  if (it != images_.end()) return it->second;
  Exponent lower = e;
  int i = 0;
  while (lower[i] == 0) ++i;
  --lower[i];
  Poly t = image(lower) * coord_[i];
  return images_.emplace(e, std::move(t)).first->second;
}

Poly FaceRestrictor::operator()(const Poly& p) {
  if (!p.is_zero() && p.dim() != face_.dim) throw std::invalid_argument("FaceRestrictor: dimension mismatch");
  Poly r(face_.dim - 1);
  for (const auto& [e, c] : p.terms()) r += c * image(e);
  return r;
}

VecPoly FaceRestrictor::operator()(const VecPoly& v) {
  std::vector<Poly> comps;
  for (const auto& c : v.components()) comps.push_back((*this)(c));
  return VecPoly(std::move(comps));
}

}  // namespace korn
