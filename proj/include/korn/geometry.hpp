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

#include "korn/poly.hpp"
#include "korn/rational.hpp"

namespace korn {

using Point = Vector;

enum class CellKind { simplex, box };

std::string to_string(CellKind kind);

/// Affine simplex (d + 1 vertices) or axis-aligned box (lo, hi) in 2D or 3D.
class Cell {
 public:
  /// Throws std::invalid_argument for degenerate or malformed input.
  static Cell simplex(std::vector<Point> vertices, int id = 0);
  static Cell box(Point lo, Point hi, int id = 0);

  CellKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int id() const { return id_; }
  /// Simplex vertices, or {lo, hi} for a box.
  const std::vector<Point>& vertices() const { return vertices_; }
  /// All geometric corners (2^d of them for a box).
  std::vector<Point> corners() const;

  /// Map from the reference simplex / unit box onto the cell.
  const AffineMap& reference_map() const { return ref_map_; }
  /// |det| of the reference map.
  const Rational& jacobian() const { return jacobian_; }
  Rational measure() const;
  Point centroid() const;
  /// Barycentric coordinates lambda_0..lambda_d as affine polynomials (simplex only).
  std::vector<Poly> barycentric() const;

  Cell with_id(int id) const;
  /// Image under x -> A x + b (A invertible).
  Cell mapped(const AffineMap& map) const;

 private:
  Cell() = default;
  void finish();

  CellKind kind_ = CellKind::simplex;
  int dim_ = 0;
  int id_ = 0;
  std::vector<Point> vertices_;
  AffineMap ref_map_;
  Rational jacobian_;
};

/// Facet of a cell with an unnormalized rational frame.
///
/// `normal` points out of `first_cell`; the jump across the face is the
/// second-cell trace minus the first-cell trace, so `normal` points from the
/// subtracted side into the other one. On boundary faces the jump is the trace.
struct Face {
  int dim = 0;  ///< ambient dimension
  std::vector<Point> vertices;
  Vector normal;
  std::vector<Vector> tangents;  ///< d - 1 mutually orthogonal vectors
  Point barycenter;
  AffineMap chart;  ///< (d - 1)-dimensional reference chart onto the face
  CellKind chart_kind = CellKind::simplex;
  Rational metric_sq;              ///< squared true-measure / chart-measure ratio
  std::optional<Rational> metric;  ///< its square root when rational
  bool is_boundary = true;
  int first_cell = -1;
  int second_cell = -1;
  int local_index = -1;  ///< position in faces_of(first cell)

  /// Chart measure of the face (1 for unit box charts, 1/(d-1)! for simplex charts).
  Rational chart_measure() const;
  /// Chart coordinates of the ambient point `x` (x must lie on the face).
  Vector chart_coordinates(const Point& x) const;
};

/// Facets of `cell` with outward normals. Simplex face i is opposite vertex i;
/// box faces are ordered (axis 0 lo, axis 0 hi, axis 1 lo, ...).
std::vector<Face> faces_of(const Cell& cell);

/// Conforming mesh of simplices and/or boxes with derived face adjacency.
class Mesh {
 public:
  /// Cells are re-numbered by position. Throws if a face is shared by more than two cells.
  explicit Mesh(std::vector<Cell> cells);

  int dim() const { return dim_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<int>& interior_faces() const { return interior_; }
  const std::vector<int>& boundary_faces() const { return boundary_; }
  /// Global face ids of cell c in local (faces_of) order.
  const std::vector<int>& cell_faces(int c) const { return cell_faces_[c]; }
  bool is_simplicial() const;

 private:
  int dim_ = 0;
  std::vector<Cell> cells_;
  std::vector<Face> faces_;
  std::vector<int> interior_;
  std::vector<int> boundary_;
  std::vector<std::vector<int>> cell_faces_;
};

/// T1 = [-1,0]x[0,1], T2 = [0,1]x[0,1].
Mesh make_two_square_domain();
/// T1 = [0,1]x[-1,0]x[0,1], T2 = [0,1]x[0,1]x[0,1].
Mesh make_two_cube_domain();
/// Reference simplex plus its neighbour across the face opposite the origin.
Mesh make_simplex_pair(int dim);
/// [x0,x1]x[y0,y1] cut into nx*ny squares, each split along its (lo,lo)-(hi,hi) diagonal.
Mesh make_rectangle_triangulation(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1,
                                  int nx, int ny);

Cell reference_simplex(int dim);

}  // namespace korn
