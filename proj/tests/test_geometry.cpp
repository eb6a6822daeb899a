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

#include <doctest.h>

#include "korn/geometry.hpp"
#include "korn/integrate.hpp"
#include "korn/mesh_io.hpp"
#include "support.hpp"

using namespace korn;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

bool outward(const Face& f, const Cell& c) { return sgn(dot(f.normal, f.barycenter - c.centroid())) > 0; }

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("reference simplex faces") {
    Cell t = reference_simplex(2);
    auto faces = faces_of(t);
    REQUIRE(faces.size() == 3);
    for (const auto& f : faces) {
      CHECK(outward(f, t));
      CHECK(dot(f.normal, f.tangents[0]) == 0);
      // 2D tangent convention t = (-n_y, n_x)
      CHECK(f.tangents[0] == Vector{-f.normal[1], f.normal[0]});
    }
    // face 0 is opposite vertex 0: the hypotenuse, true length sqrt(2), irrational metric
    CHECK_FALSE(faces[0].metric.has_value());
    CHECK(faces[0].metric_sq == 2);
    CHECK(faces[1].metric == Rational(1));

    Cell tet = reference_simplex(3);
    for (const auto& f : faces_of(tet)) {
      CHECK(outward(f, tet));
      CHECK(dot(f.tangents[0], f.tangents[1]) == 0);
      CHECK(dot(f.normal, f.tangents[0]) == 0);
      CHECK(dot(f.normal, f.tangents[1]) == 0);
    }
  }

  TEST_CASE("canonical two-cell domains") {
    Mesh sq = make_two_square_domain();
    CHECK(sq.faces().size() == 7);
    REQUIRE(sq.interior_faces().size() == 1);
    const Face& f = sq.faces()[sq.interior_faces()[0]];
    CHECK(f.first_cell == 0);
    CHECK(f.second_cell == 1);
    CHECK(f.normal == Vector{1, 0});
    CHECK(f.tangents[0] == Vector{0, 1});

    Mesh cube = make_two_cube_domain();
    CHECK(cube.faces().size() == 11);
    REQUIRE(cube.interior_faces().size() == 1);
    const Face& g = cube.faces()[cube.interior_faces()[0]];
    CHECK(g.normal == Vector{0, 1, 0});
    CHECK(g.tangents[0] == Vector{1, 0, 0});
    CHECK(g.tangents[1] == Vector{0, 0, 1});
    CHECK(g.metric == Rational(1));

    Mesh pair = make_simplex_pair(3);
    CHECK(pair.faces().size() == 7);
    CHECK(pair.interior_faces().size() == 1);
    CHECK(pair.is_simplicial());
    CHECK_FALSE(cube.is_simplicial());
  }

  TEST_CASE("structured triangulation") {
    Mesh m = make_rectangle_triangulation(0, 1, 0, 1, 2, 2);
    CHECK(m.cells().size() == 8);
    CHECK(m.interior_faces().size() == 8);
    CHECK(m.boundary_faces().size() == 8);
    Rational area = 0;
    for (const auto& c : m.cells()) area += c.measure();
    CHECK(area == 1);
  }

  TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(Cell::simplex({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Cell::box({0, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Mesh({}), std::invalid_argument);
    CHECK_THROWS_AS(Mesh({reference_simplex(2), reference_simplex(3)}), std::invalid_argument);
    // three triangles on one edge
    CHECK_THROWS_AS(Mesh({Cell::simplex({{0, 0}, {1, 0}, {0, 1}}), Cell::simplex({{0, 0}, {1, 0}, {0, -1}}),
                          Cell::simplex({{0, 0}, {1, 0}, {1, 1}})}),
                    std::invalid_argument);
  }

  TEST_CASE("boundary measure policy") {
    BoundaryMeasure sq = boundary_measure(make_two_square_domain());
    CHECK(sq.true_measure);
    BoundaryMeasure tet = boundary_measure(make_simplex_pair(3));
    CHECK_FALSE(tet.true_measure);
    Mesh m = make_two_square_domain();
    // perimeter of [-1,1]x[0,1]
    CHECK(integrate_boundary(Poly::constant(2, 1), m, sq) == 6);
  }

  TEST_CASE("property: simplex measure and face frames on random cells") {
    testing::RationalSource src(11);
    for (int t = 0; t < testing::kPropertyTrials; ++t) {
      const int d = 2 + t % 2;
      Cell c = src.simplex(d);
      Rational expect = abs(determinant(RationalMatrix::from_columns(
                            [&] {
                              std::vector<Vector> cols;
                              for (int i = 1; i <= d; ++i) cols.push_back(c.vertices()[i] - c.vertices()[0]);
                              return cols;
                            }(),
                            d))) /
                        (d == 2 ? 2 : 6);
      CHECK(c.measure() == expect);
      for (const auto& f : faces_of(c)) {
        CHECK(outward(f, c));
        for (const auto& tv : f.tangents) CHECK(dot(tv, f.normal) == 0);
        // face vertices lie in the plane through the barycenter
        for (const auto& v : f.vertices) CHECK(dot(v - f.barycenter, f.normal) == 0);
      }
    }
  }
}

TEST_SUITE("mesh_io") {
  TEST_CASE("builtin meshes round-trip through JSON") {
    for (const auto& name : builtin_mesh_names()) {
      Mesh m = builtin_mesh(name);
      Mesh back = parse_mesh_json(mesh_to_json(m));
      REQUIRE(back.cells().size() == m.cells().size());
      for (std::size_t i = 0; i < m.cells().size(); ++i) CHECK(back.cells()[i].vertices() == m.cells()[i].vertices());
      CHECK(back.faces().size() == m.faces().size());
      CHECK(back.interior_faces() == m.interior_faces());
    }
    CHECK_THROWS_AS(builtin_mesh("nope"), std::invalid_argument);
  }

  TEST_CASE("rational strings and integers are accepted") {
    Mesh m = parse_mesh_json(R"({"dimension": 2, "vertices": [["0","0"],[1,"0"],["0","1/2"]],
                                 "cells": [{"kind": "simplex", "vertex_ids": [0,1,2]}]})");
    CHECK(m.cells()[0].measure() == q(1, 4));
  }

  TEST_CASE("syntax errors carry line and column") {
    const std::string text = "{\"dimension\": 2,\n \"vertices\": [[\"0\",\"0\"],\n ]";
    try {
      parse_mesh_json(text, "m.json");
      FAIL("expected a parse error");
    } catch (const MeshParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("m.json:3:") == 0);
    }
  }

  TEST_CASE("structural errors point at the offending value") {
    const std::string text =
        "{\n"
        "  \"dimension\": 2,\n"
        "  \"vertices\": [[\"0\", \"0\"], [\"1\", \"0\"], [\"0\", \"1\"]],\n"
        "  \"cells\": [\n"
        "    {\"kind\": \"simplex\", \"vertex_ids\": [0, 1, 2]},\n"
        "    {\"kind\": \"wedge\", \"vertex_ids\": [0, 1, 2]}\n"
        "  ]\n"
        "}\n";
    try {
      parse_mesh_json(text, "m.json");
      FAIL("expected a parse error");
    } catch (const MeshParseError& e) {
      CHECK(e.line() == 6);
      CHECK(std::string(e.what()).find("wedge") != std::string::npos);
    }
    auto line_of = [](const std::string& t) {
      try {
        parse_mesh_json(t);
      } catch (const MeshParseError& e) {
        return e.line();
      }
      return std::size_t(0);
    };
    CHECK(line_of("{\"dimension\": 4,\n\"vertices\": [], \"cells\": []}") == 1);
    CHECK(line_of("{\"dimension\": 2,\n\"vertices\": [[\"0\",\"0\"]],\n\"cells\": [{\"kind\": \"simplex\", \"vertex_ids\": [0, 0, 7]}]}") == 3);
    CHECK(line_of("{\"dimension\": 2,\n\"vertices\": [[\"0\",\"x\"]], \"cells\": []}") == 2);
    CHECK(line_of("{\"dimension\": 2, \"vertices\": [[\"0\",\"0\"]]}") == 1);
  }

  TEST_CASE("degenerate cells are input errors") {
    CHECK_THROWS_AS(parse_mesh_json(R"({"dimension": 2, "vertices": [["0","0"],["1","1"],["2","2"]],
                                        "cells": [{"kind": "simplex", "vertex_ids": [0,1,2]}]})"),
                    MeshParseError);
    CHECK_THROWS_AS(load_mesh("/nonexistent/mesh.json"), MeshParseError);
  }
}
