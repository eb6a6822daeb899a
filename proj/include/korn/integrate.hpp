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

#include <map>
#include <vector>

#include "korn/geometry.hpp"
#include "korn/poly.hpp"

namespace korn {

/// Exact integral of p over the cell.
Rational integrate_cell(const Poly& p, const Cell& cell);

/// p (ambient coordinates) composed with the face chart.
Poly restrict_to_face(const Poly& p, const Face& face);
VecPoly restrict_to_face(const VecPoly& v, const Face& face);

/// Integral of a chart polynomial over the reference chart (chart measure, no metric factor).
Rational integrate_face(const Poly& chart_poly, const Face& face);

/// Chart-measure integral of an ambient polynomial over the face.
Rational integrate_on_face(const Poly& p, const Face& face);

/// Per-face weights turning chart integrals into boundary integrals. When every boundary
/// face has a rational metric the weights are the true metrics (exact arc length / area);
/// otherwise every weight is 1 (chart measure).
struct BoundaryMeasure {
  bool true_measure = false;
  std::vector<Rational> weights;  ///< indexed by global face id; 0 on interior faces
};

BoundaryMeasure boundary_measure(const Mesh& mesh);
/// Weighted sum of chart integrals of p over the boundary faces.
Rational integrate_boundary(const Poly& p, const Mesh& mesh, const BoundaryMeasure& measure);

/// Caches monomial moments of one cell so that repeated integrals reduce to dot products.
/// Not thread-safe; create one per thread.
class CellIntegrator {
 public:
  explicit CellIntegrator(const Cell& cell) : cell_(cell) {}
  Rational operator()(const Poly& p);
  const Cell& cell() const { return cell_; }

 private:
  Cell cell_;
  std::map<Exponent, Rational> moments_;
};

/// Same as CellIntegrator for ambient polynomials on a face (chart measure).
class FaceIntegrator {
 public:
  explicit FaceIntegrator(const Face& face) : face_(face) {}
  Rational operator()(const Poly& p);
  const Face& face() const { return face_; }

 private:
  Face face_;
  std::map<Exponent, Rational> moments_;
};

/// restrict_to_face with the chart images of ambient monomials kept between calls.
class FaceRestrictor {
 public:
  explicit FaceRestrictor(const Face& face);
  Poly operator()(const Poly& p);
  VecPoly operator()(const VecPoly& v);
  const Face& face() const { return face_; }

 private:
  const Poly& image(const Exponent& e);

  Face face_;
  std::vector<Poly> coord_;
  std::map<Exponent, Poly, GradedLex> images_;
};

}  // namespace korn
