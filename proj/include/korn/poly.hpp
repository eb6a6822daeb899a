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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "korn/rational.hpp"

namespace korn {

/// Exponent multi-index; entries beyond the polynomial's dimension are zero.
using Exponent = std::array<std::uint8_t, 3>;

int total_degree(const Exponent& e);

/// Graded lexicographic order: lower total degree first, ties broken with x > y > z.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Multivariate polynomial in 1..3 variables with exact rational coefficients.
/// Zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Exponent, Rational, GradedLex>;

  explicit Poly(int dim = 0);
  static Poly constant(int dim, const Rational& c);
  static Poly variable(int dim, int axis);
  static Poly monomial(int dim, const Exponent& e, const Rational& c = 1);
  /// c0 + sum_i c[i] x_i
  static Poly affine(const Rational& c0, const Vector& linear);

  int dim() const { return dim_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Rational coeff(const Exponent& e) const;

  Rational operator()(std::span<const Rational> x) const;
  double eval(std::span<const double> x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  bool operator==(const Poly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  void add_term(const Exponent& e, const Rational& c);

 private:
  int dim_;
  Terms terms_;
};

Poly pow(const Poly& p, int k);

/// Fixed-length tuple of polynomials sharing one variable count.
class VecPoly {
 public:
  VecPoly() = default;
  VecPoly(int components, int dim);
  explicit VecPoly(std::vector<Poly> comps);
  static VecPoly constant(int dim, const Vector& c);
  /// Scalar field as a one-component VecPoly.
  static VecPoly scalar(Poly p);

  std::size_t size() const { return comps_.size(); }
  int dim() const { return comps_.empty() ? 0 : comps_[0].dim(); }
  Poly& operator[](std::size_t i) { return comps_[i]; }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }
  bool is_zero() const;
  int degree() const;

  VecPoly& operator+=(const VecPoly& o);
  VecPoly& operator-=(const VecPoly& o);
  VecPoly& operator*=(const Rational& s);
  friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
  friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }
  friend VecPoly operator*(const Rational& s, VecPoly a) { return a *= s; }
  friend VecPoly operator*(const Poly& p, const VecPoly& v);
  bool operator==(const VecPoly& o) const { return comps_ == o.comps_; }

 private:
  std::vector<Poly> comps_;
};

Poly dot(const VecPoly& a, const VecPoly& b);
Poly dot(const VecPoly& a, const Vector& c);
VecPoly cross(const VecPoly& a, const VecPoly& b);
VecPoly cross(const VecPoly& a, const Vector& c);

// Calculus.
Poly derivative(const Poly& p, int axis);
VecPoly grad(const Poly& p);
Poly div(const VecPoly& v);
/// (-dq/dy, dq/dx)
VecPoly curl2_scalar(const Poly& q);
/// dv2/dx - dv1/dy
Poly curl2_vector(const VecPoly& v);
VecPoly curl3(const VecPoly& v);
/// Symmetric gradient; entry (i, j) = (d_j v_i + d_i v_j) / 2.
std::vector<std::vector<Poly>> strain(const VecPoly& v);
/// Full gradient matrix, entry (i, j) = d_j v_i.
std::vector<std::vector<Poly>> jacobian(const VecPoly& v);

/// x -> matrix * x + offset, from R^in_dim to R^out_dim.
struct AffineMap {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<Vector> matrix;  ///< out_dim rows of length in_dim
  Vector offset;               ///< out_dim

  Vector operator()(const Vector& x) const;
  static AffineMap identity(int dim);
};

/// Composition p o map, a polynomial in map.in_dim variables.
Poly pullback(const Poly& p, const AffineMap& map);
VecPoly pullback(const VecPoly& v, const AffineMap& map);

/// Integral over {y_i >= 0, sum y_i <= 1} in p.dim() variables.
Rational integrate_reference_simplex(const Poly& p);
/// Integral over the unit box [0, 1]^p.dim().
Rational integrate_unit_box(const Poly& p);

/// Text form such as "1/2 - 3*x*y^2" in graded lex order, rationals as "p/q".
std::string to_text(const Poly& p);
std::string to_text(const VecPoly& v);

}  // namespace korn
