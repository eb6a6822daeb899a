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

#include "korn/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "korn/linalg.hpp"

namespace korn {

std::string to_string(CellKind kind) { return kind == CellKind::simplex ? "simplex" : "box"; }

Cell Cell::simplex(std::vector<Point> vertices, int id) {
  if (vertices.empty()) throw std::invalid_argument("simplex: no vertices");
  const int d = static_cast<int>(vertices[0].size());
  if (d != 2 && d != 3) throw std::invalid_argument("simplex: dimension must be 2 or 3");
  if (static_cast<int>(vertices.size()) != d + 1) throw std::invalid_argument("simplex: need d + 1 vertices");
  for (const auto& v : vertices) {
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("simplex: mixed vertex dimensions");
  }
  Cell c;
  c.kind_ = CellKind::simplex;
  c.dim_ = d;
  c.id_ = id;
  c.vertices_ = std::move(vertices);
  c.finish();
  return c;
}

Cell Cell::box(Point lo, Point hi, int id) {
  const int d = static_cast<int>(lo.size());
  if (d != 2 && d != 3) throw std::invalid_argument("box: dimension must be 2 or 3");
  if (static_cast<int>(hi.size()) != d) throw std::invalid_argument("box: corner dimension mismatch");
  for (int i = 0; i < d; ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box: lo must be below hi componentwise");
  }
  Cell c;
  c.kind_ = CellKind::box;
  c.dim_ = d;
  c.id_ = id;
  c.vertices_ = {std::move(lo), std::move(hi)};
  c.finish();
  return c;
}

void Cell::finish() {
  ref_map_.in_dim = dim_;
  ref_map_.out_dim = dim_;
  ref_map_.matrix.assign(dim_, Vector(dim_));
  ref_map_.offset = vertices_[0];
  if (kind_ == CellKind::simplex) {
    for (int j = 0; j < dim_; ++j)
      for (int i = 0; i < dim_; ++i) ref_map_.matrix[i][j] = vertices_[j + 1][i] - vertices_[0][i];
    RationalMatrix m = RationalMatrix::from_rows(ref_map_.matrix, dim_);
    jacobian_ = abs(determinant(m));
    if (sgn(jacobian_) == 0) throw std::invalid_argument("simplex: degenerate (zero volume)");
  } else {
    jacobian_ = 1;
    for (int i = 0; i < dim_; ++i) {
      ref_map_.matrix[i][i] = vertices_[1][i] - vertices_[0][i];
      jacobian_ *= ref_map_.matrix[i][i];
    }
  }
}

std::vector<Point> Cell::corners() const {
  if (kind_ == CellKind::simplex) return vertices_;
  std::vector<Point> out;
  for (int mask = 0; mask < (1 << dim_); ++mask) {
    Point p(dim_);
    for (int i = 0; i < dim_; ++i) p[i] = vertices_[(mask >> i) & 1][i];
    out.push_back(p);
  }
  return out;
}

Rational Cell::measure() const {
  if (kind_ == CellKind::box) return jacobian_;
  return dim_ == 2 ? Rational(jacobian_ / 2) : Rational(jacobian_ / 6);
}

Point Cell::centroid() const {
  auto pts = corners();
  Point c(dim_);
  for (const auto& p : pts) c = c + p;
  return Rational(1, static_cast<long>(pts.size())) * c;
}

std::vector<Poly> Cell::barycentric() const {
  if (kind_ != CellKind::simplex) throw std::invalid_argument("barycentric: simplex required");
  // lambda_{1..d}(x) = J^{-1} (x - v0), lambda_0 = 1 - sum.
  RationalMatrix j = RationalMatrix::from_rows(ref_map_.matrix, dim_);
  RationalMatrix inv = inverse(j);
  std::vector<Poly> lambda(dim_ + 1, Poly(dim_));
  Poly sum(dim_);
  for (int k = 0; k < dim_; ++k) {
    Vector lin = inv.row(k);
    Rational c0 = -dot(lin, vertices_[0]);
    lambda[k + 1] = Poly::affine(c0, lin);
    sum += lambda[k + 1];
  }
  lambda[0] = Poly::constant(dim_, 1) - sum;
  return lambda;
}

Cell Cell::with_id(int id) const {
  Cell c = *this;
  c.id_ = id;
  return c;
}

Cell Cell::mapped(const AffineMap& map) const {
  if (kind_ != CellKind::simplex) throw std::invalid_argument("mapped: only simplices may be mapped affinely");
  std::vector<Point> v;
  for (const auto& p : vertices_) v.push_back(map(p));
  return simplex(std::move(v), id_);
}

// ---------------------------------------------------------------------------

Rational Face::chart_measure() const {
  if (chart_kind == CellKind::box) return 1;
  return dim == 2 ? Rational(1) : Rational(1, 2);
}

Vector Face::chart_coordinates(const Point& x) const {
  RationalMatrix m = RationalMatrix::from_rows(chart.matrix, chart.in_dim);
  auto s = solve(m, x - chart.offset);
  if (!s) throw std::invalid_argument("chart_coordinates: point not on face");
  return *s;
}

namespace {

Face make_face(const Cell& cell, std::vector<Point> verts, const AffineMap& chart, CellKind chart_kind) {
  const int d = cell.dim();
  Face f;
  f.dim = d;
  f.vertices = std::move(verts);
  f.chart = chart;
  f.chart_kind = chart_kind;
  f.barycenter = Point(d);
  for (const auto& v : f.vertices) f.barycenter = f.barycenter + v;
  f.barycenter = Rational(1, static_cast<long>(f.vertices.size())) * f.barycenter;

  std::vector<Vector> cols(d - 1, Vector(d));
  for (int j = 0; j < d - 1; ++j)
    for (int i = 0; i < d; ++i) cols[j][i] = chart.matrix[i][j];

  if (d == 2) {
    f.normal = {cols[0][1], -cols[0][0]};
  } else {
    f.normal = cross(cols[0], cols[1]);
  }
  if (sgn(dot(f.normal, f.barycenter - cell.centroid())) < 0) f.normal = Rational(-1) * f.normal;
  if (chart_kind == CellKind::box) {
    // axis-aligned: use the unit outward normal
    for (auto& c : f.normal) c = sgn(c);
  }

  if (d == 2) {
    f.tangents = {Vector{-f.normal[1], f.normal[0]}};
  } else if (chart_kind == CellKind::box) {
    f.tangents = cols;
  } else {
    Vector t1 = cols[0];
    Vector t2 = cols[1] - Rational(dot(cols[1], t1) / dot(t1, t1)) * t1;
    f.tangents = {t1, t2};
  }

  RationalMatrix jm = RationalMatrix::from_columns(cols, d);
  f.metric_sq = determinant(jm.transpose() * jm);
  f.metric = exact_sqrt(f.metric_sq);
  f.local_index = -1;
  return f;
}

}  // namespace

std::vector<Face> faces_of(const Cell& cell) {
  const int d = cell.dim();
  std::vector<Face> faces;
  if (cell.kind() == CellKind::simplex) {
    const auto& v = cell.vertices();
    for (int i = 0; i <= d; ++i) {
      std::vector<Point> fv;
      for (int j = 0; j <= d; ++j) {
        if (j != i) fv.push_back(v[j]);
      }
      AffineMap chart;
      chart.in_dim = d - 1;
      chart.out_dim = d;
      chart.offset = fv[0];
      chart.matrix.assign(d, Vector(d - 1));
      for (int k = 0; k < d - 1; ++k)
        for (int r = 0; r < d; ++r) chart.matrix[r][k] = fv[k + 1][r] - fv[0][r];
      faces.push_back(make_face(cell, std::move(fv), chart, CellKind::simplex));
    }
  } else {
    const Point& lo = cell.vertices()[0];
    const Point& hi = cell.vertices()[1];
    for (int axis = 0; axis < d; ++axis) {
      for (int side = 0; side < 2; ++side) {
        std::vector<int> free_axes;
        for (int b = 0; b < d; ++b) {
          if (b != axis) free_axes.push_back(b);
        }
        AffineMap chart;
        chart.in_dim = d - 1;
        chart.out_dim = d;
        chart.offset = lo;
        chart.offset[axis] = side == 0 ? lo[axis] : hi[axis];
        chart.matrix.assign(d, Vector(d - 1));
        for (int k = 0; k < d - 1; ++k) chart.matrix[free_axes[k]][k] = hi[free_axes[k]] - lo[free_axes[k]];
        std::vector<Point> fv;
        for (int mask = 0; mask < (1 << (d - 1)); ++mask) {
          Vector s(d - 1);
          for (int k = 0; k < d - 1; ++k) s[k] = (mask >> k) & 1;
          fv.push_back(chart(s));
        }
        faces.push_back(make_face(cell, std::move(fv), chart, CellKind::box));
      }
    }
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    faces[i].local_index = static_cast<int>(i);
    faces[i].first_cell = cell.id();
  }
  return faces;
}

// ---------------------------------------------------------------------------

Mesh::Mesh(std::vector<Cell> cells) {
  if (cells.empty()) throw std::invalid_argument("Mesh: no cells");
  dim_ = cells[0].dim();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].dim() != dim_) throw std::invalid_argument("Mesh: mixed cell dimensions");
    cells_.push_back(cells[i].with_id(static_cast<int>(i)));
  }
  std::map<std::vector<Point>, int> lookup;
  cell_faces_.resize(cells_.size());
  for (const auto& cell : cells_) {
    for (auto& f : faces_of(cell)) {
      std::vector<Point> key = f.vertices;
      std::sort(key.begin(), key.end());
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        lookup.emplace(key, static_cast<int>(faces_.size()));
        cell_faces_[cell.id()].push_back(static_cast<int>(faces_.size()));
        faces_.push_back(std::move(f));
      } else {
        Face& shared = faces_[it->second];
        if (!shared.is_boundary) throw std::invalid_argument("Mesh: face shared by more than two cells");
        shared.is_boundary = false;
        shared.second_cell = cell.id();
        cell_faces_[cell.id()].push_back(it->second);
      }
    }
  }
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    (faces_[i].is_boundary ? boundary_ : interior_).push_back(static_cast<int>(i));
  }
}

bool Mesh::is_simplicial() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.kind() == CellKind::simplex; });
}

Mesh make_two_square_domain() {
  return Mesh({Cell::box({-1, 0}, {0, 1}), Cell::box({0, 0}, {1, 1})});
}

Mesh make_two_cube_domain() {
  return Mesh({Cell::box({0, -1, 0}, {1, 0, 1}), Cell::box({0, 0, 0}, {1, 1, 1})});
}

Cell reference_simplex(int dim) {
  if (dim == 2) return Cell::simplex({{0, 0}, {1, 0}, {0, 1}});
  if (dim == 3) return Cell::simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  throw std::invalid_argument("reference_simplex: dimension must be 2 or 3");
}

Mesh make_simplex_pair(int dim) {
  if (dim == 2) {
    return Mesh({reference_simplex(2), Cell::simplex({{1, 1}, {0, 1}, {1, 0}})});
  }
  if (dim == 3) {
    return Mesh({reference_simplex(3), Cell::simplex({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
  }
  throw std::invalid_argument("make_simplex_pair: dimension must be 2 or 3");
}

Mesh make_rectangle_triangulation(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1,
                                  int nx, int ny) {
  if (nx < 1 || ny < 1 || !(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("make_rectangle_triangulation: bad extent");
  std::vector<Cell> cells;
  Rational hx = (x1 - x0) / nx;
  Rational hy = (y1 - y0) / ny;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Point a{x0 + hx * i, y0 + hy * j};
      Point b{x0 + hx * (i + 1), y0 + hy * j};
      Point c{x0 + hx * (i + 1), y0 + hy * (j + 1)};
      Point e{x0 + hx * i, y0 + hy * (j + 1)};
      cells.push_back(Cell::simplex({a, b, c}));
      cells.push_back(Cell::simplex({a, c, e}));
    }
  }
  return Mesh(std::move(cells));
}

}  // namespace korn
