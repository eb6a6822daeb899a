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

#include "korn/integrate.hpp"
#include "korn/linalg.hpp"
#include "korn/poly.hpp"
#include "support.hpp"

using namespace korn;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_SUITE("polyalg") {
  TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-4") == q(-4));
    CHECK(parse_rational(" -7/14 ") == q(-1, 2));
    CHECK_THROWS_AS(parse_rational("7/-14"), std::invalid_argument);
    CHECK(to_string(q(6, 4)) == "3/2");
    CHECK(to_string(q(-5)) == "-5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(exact_sqrt(q(9, 4)) == q(3, 2));
    CHECK_FALSE(exact_sqrt(q(2)).has_value());
  }

  TEST_CASE("polynomial arithmetic") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly s = pow(x + y, 2);
    CHECK(s.coeff({2, 0, 0}) == 1);
    CHECK(s.coeff({1, 1, 0}) == 2);
    CHECK(s.coeff({0, 2, 0}) == 1);
    CHECK(s.degree() == 2);
    CHECK((s - s).is_zero());
    CHECK(derivative(x * x * y, 0) == Rational(2) * x * y);
    Rational pt[2] = {q(1, 2), q(-3)};
    CHECK(s(pt) == q(25, 4));
    CHECK(to_text(Poly::constant(2, q(1, 2)) - Rational(3) * x * y * y) == "1/2 - 3*x*y^2");
  }

  TEST_CASE("reference simplex moments match the Dirichlet formula") {
    // integral of x^a y^b z^c over the unit simplex in R^d = a! b! c! / (a + b + c + d)!
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        Poly p = Poly::monomial(2, {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), 0});
        CHECK(integrate_reference_simplex(p) == factorial(a) * factorial(b) / factorial(a + b + 2));
        for (int c = 0; c <= 2; ++c) {
          Poly p3 = Poly::monomial(3, {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)});
          CHECK(integrate_reference_simplex(p3) == factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3));
        }
      }
    CHECK(integrate_reference_simplex(Poly::monomial(2, {2, 1, 0})) == q(1, 60));
    CHECK(integrate_reference_simplex(Poly::monomial(3, {1, 1, 1})) == q(1, 720));
    CHECK(integrate_unit_box(Poly::monomial(2, {2, 1, 0})) == q(1, 6));
  }

  TEST_CASE("cell integration on a mapped triangle") {
    // triangle (0,0), (2,0), (0,3): area 3, integral of x = 2, of x*y = 3/2
    Cell t = Cell::simplex({{0, 0}, {2, 0}, {0, 3}});
    CHECK(t.measure() == 3);
    CHECK(integrate_cell(Poly::variable(2, 0), t) == 2);
    CHECK(integrate_cell(Poly::variable(2, 0) * Poly::variable(2, 1), t) == q(3, 2));
    Cell b = Cell::box({-1, 0}, {0, 1});
    CHECK(integrate_cell(Poly::variable(2, 0), b) == q(-1, 2));
  }

  TEST_CASE("exact linear algebra") {
    RationalMatrix m = RationalMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(rank(m) == 2);
    CHECK(determinant(m) == 0);
    auto n = nullspace(m);
    REQUIRE(n.size() == 1);
    CHECK(is_zero(m.apply(n[0])));
    RationalMatrix a = RationalMatrix::from_rows({{2, 1}, {1, 3}}, 2);
    CHECK(determinant(a) == 5);
    CHECK(inverse(a) * a == RationalMatrix::from_rows({{1, 0}, {0, 1}}, 2));
    RationalMatrix row = RationalMatrix::from_rows({{1, 1}}, 2);
    CHECK(min_norm_solution(row, {2}) == Vector{1, 1});
    CHECK_THROWS_AS(min_norm_solution(RationalMatrix::from_rows({{1, 1}, {1, 1}}, 2), {1, 2}), std::domain_error);
    CHECK_FALSE(solve(RationalMatrix::from_rows({{1, 1}, {1, 1}}, 2), {1, 2}).has_value());
    CHECK_THROWS_AS(inverse(m), std::domain_error);
  }

  TEST_CASE("property: rank plus nullity equals column count") {
    testing::RationalSource src(1);
    for (int t = 0; t < testing::kPropertyTrials; ++t) {
      const int rows = src.integer(1, 5), cols = src.integer(1, 6);
      RationalMatrix m(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = src.integer(0, 2) == 0 ? Rational(0) : src.rational();
      auto n = nullspace(m);
      CHECK(rank(m) + n.size() == static_cast<std::size_t>(cols));
      for (const auto& v : n) CHECK(is_zero(m.apply(v)));
    }
  }

  TEST_CASE("property: integration commutes with affine pullback") {
    testing::RationalSource src(2);
    for (int t = 0; t < testing::kPropertyTrials; ++t) {
      const int d = 2 + t % 2;
      Cell cell = src.simplex(d);
      Poly p = src.poly(d, 2);
      Rational direct = integrate_cell(p, cell);
      Rational pulled = cell.jacobian() * integrate_reference_simplex(pullback(p, cell.reference_map()));
      CHECK(direct == pulled);
    }
  }

  TEST_CASE("property: min-norm solutions solve consistent systems and are orthogonal to the kernel") {
    testing::RationalSource src(3);
    for (int t = 0; t < testing::kPropertyTrials; ++t) {
      const int rows = src.integer(1, 4), cols = src.integer(rows, 6);
      RationalMatrix m(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = src.rational();
      Vector x0 = src.vector(cols);
      Vector b = m.apply(x0);
      Vector x = min_norm_solution(m, b);
      CHECK(m.apply(x) == b);
      for (const auto& n : nullspace(m)) CHECK(dot(n, x) == 0);
    }
  }
}
