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

#include "korn/poly.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace korn {

int total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

Poly::Poly(int dim) : dim_(dim) {
  if (dim < 0 || dim > 3) throw std::invalid_argument("Poly: dimension must be in [0, 3]");
}

Poly Poly::constant(int dim, const Rational& c) {
  Poly p(dim);
  p.add_term({0, 0, 0}, c);
  return p;
}

Poly Poly::variable(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("Poly::variable: axis out of range");
  Exponent e{0, 0, 0};
  e[axis] = 1;
  return monomial(dim, e);
}

Poly Poly::monomial(int dim, const Exponent& e, const Rational& c) {
  for (int i = dim; i < 3; ++i) {
    if (e[i] != 0) throw std::invalid_argument("Poly::monomial: exponent exceeds dimension");
  }
  Poly p(dim);
  p.add_term(e, c);
  return p;
}

Poly Poly::affine(const Rational& c0, const Vector& linear) {
  const int dim = static_cast<int>(linear.size());
  Poly p = constant(dim, c0);
  for (int i = 0; i < dim; ++i) {
    Exponent e{0, 0, 0};
    e[i] = 1;
    p.add_term(e, linear[i]);
  }
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

Rational Poly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational Poly::operator()(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) < dim_) throw std::invalid_argument("Poly: evaluation point too short");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i) {
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    }
    s += t;
  }
  return s;
}

double Poly::eval(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < dim_; ++i) t *= std::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.dim_ != dim_ && !o.is_zero()) {
    if (is_zero()) {
      dim_ = o.dim_;
    } else {
      throw std::invalid_argument("Poly: dimension mismatch");
    }
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.dim_ != dim_ && !o.is_zero()) {
    if (is_zero()) {
      dim_ = o.dim_;
    } else {
      throw std::invalid_argument("Poly: dimension mismatch");
    }
  }
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_ && !a.is_zero() && !b.is_zero()) throw std::invalid_argument("Poly: dimension mismatch");
  Poly r(std::max(a.dim_, b.dim_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e{static_cast<std::uint8_t>(ea[0] + eb[0]), static_cast<std::uint8_t>(ea[1] + eb[1]),
                 static_cast<std::uint8_t>(ea[2] + eb[2])};
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  r *= Rational(-1);
  return r;
}

Poly pow(const Poly& p, int k) {
  Poly r = Poly::constant(p.dim(), 1);
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// ---------------------------------------------------------------------------

VecPoly::VecPoly(int components, int dim) : comps_(static_cast<std::size_t>(components), Poly(dim)) {}

VecPoly::VecPoly(std::vector<Poly> comps) : comps_(std::move(comps)) {
  for (const auto& c : comps_) {
    if (c.dim() != comps_[0].dim()) throw std::invalid_argument("VecPoly: components differ in dimension");
  }
}

VecPoly VecPoly::constant(int dim, const Vector& c) {
  std::vector<Poly> comps;
  for (const auto& x : c) comps.push_back(Poly::constant(dim, x));
  return VecPoly(std::move(comps));
}

VecPoly VecPoly::scalar(Poly p) { return VecPoly(std::vector<Poly>{std::move(p)}); }

bool VecPoly::is_zero() const {
  for (const auto& c : comps_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

int VecPoly::degree() const {
  int d = -1;
  for (const auto& c : comps_) d = std::max(d, c.degree());
  return d;
}

VecPoly& VecPoly::operator+=(const VecPoly& o) {
  if (o.size() != size()) throw std::invalid_argument("VecPoly: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

VecPoly& VecPoly::operator-=(const VecPoly& o) {
  if (o.size() != size()) throw std::invalid_argument("VecPoly: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

VecPoly& VecPoly::operator*=(const Rational& s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

VecPoly operator*(const Poly& p, const VecPoly& v) {
  std::vector<Poly> comps;
  for (const auto& c : v.components()) comps.push_back(p * c);
  return VecPoly(std::move(comps));
}

Poly dot(const VecPoly& a, const VecPoly& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Poly s(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Poly dot(const VecPoly& a, const Vector& c) {
  if (a.size() != c.size()) throw std::invalid_argument("dot: size mismatch");
  Poly s(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
  return s;
}

VecPoly cross(const VecPoly& a, const VecPoly& b) {
  if (a.size() != 3 || b.size() != 3) throw std::invalid_argument("cross: 3 components required");
  return VecPoly({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
}

VecPoly cross(const VecPoly& a, const Vector& c) {
  if (a.size() != 3 || c.size() != 3) throw std::invalid_argument("cross: 3 components required");
  return VecPoly({a[1] * c[2] - a[2] * c[1], a[2] * c[0] - a[0] * c[2], a[0] * c[1] - a[1] * c[0]});
}

// ---------------------------------------------------------------------------

Poly derivative(const Poly& p, int axis) {
  if (axis < 0 || axis >= p.dim()) throw std::invalid_argument("derivative: axis out of range");
  Poly r(p.dim());
  for (const auto& [e, c] : p.terms()) {
    if (e[axis] == 0) continue;
    Exponent d = e;
    d[axis] -= 1;
    r.add_term(d, c * e[axis]);
  }
  return r;
}

VecPoly grad(const Poly& p) {
  std::vector<Poly> comps;
  for (int i = 0; i < p.dim(); ++i) comps.push_back(derivative(p, i));
  return VecPoly(std::move(comps));
}

Poly div(const VecPoly& v) {
  if (static_cast<int>(v.size()) != v.dim()) throw std::invalid_argument("div: component count must equal dimension");
  Poly s(v.dim());
  for (int i = 0; i < v.dim(); ++i) s += derivative(v[i], i);
  return s;
}

VecPoly curl2_scalar(const Poly& q) {
  if (q.dim() != 2) throw std::invalid_argument("curl2_scalar: 2D polynomial required");
  return VecPoly({-derivative(q, 1), derivative(q, 0)});
}

Poly curl2_vector(const VecPoly& v) {
  if (v.size() != 2 || v.dim() != 2) throw std::invalid_argument("curl2_vector: 2D field required");
  return derivative(v[1], 0) - derivative(v[0], 1);
}

VecPoly curl3(const VecPoly& v) {
  if (v.size() != 3 || v.dim() != 3) throw std::invalid_argument("curl3: 3D field required");
  return VecPoly({derivative(v[1], 2) - derivative(v[2], 1), derivative(v[2], 0) - derivative(v[0], 2),
                  derivative(v[0], 1) - derivative(v[1], 0)});
}

std::vector<std::vector<Poly>> jacobian(const VecPoly& v) {
  const int d = v.dim();
  if (static_cast<int>(v.size()) != d) throw std::invalid_argument("jacobian: component count must equal dimension");
  std::vector<std::vector<Poly>> j(d, std::vector<Poly>(d, Poly(d)));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) j[i][k] = derivative(v[i], k);
  return j;
}

std::vector<std::vector<Poly>> strain(const VecPoly& v) {
  auto j = jacobian(v);
  const int d = v.dim();
  std::vector<std::vector<Poly>> s(d, std::vector<Poly>(d, Poly(d)));
  const Rational half(1, 2);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) s[i][k] = (j[i][k] + j[k][i]) * half;
  return s;
}

// ---------------------------------------------------------------------------

Vector AffineMap::operator()(const Vector& x) const {
  if (static_cast<int>(x.size()) != in_dim) throw std::invalid_argument("AffineMap: input size mismatch");
  Vector y = offset;
  for (int i = 0; i < out_dim; ++i)
    for (int j = 0; j < in_dim; ++j) y[i] += matrix[i][j] * x[j];
  return y;
}

AffineMap AffineMap::identity(int dim) {
  AffineMap m;
  m.in_dim = dim;
  m.out_dim = dim;
  m.matrix.assign(dim, Vector(dim));
  for (int i = 0; i < dim; ++i) m.matrix[i][i] = 1;
  m.offset.assign(dim, Rational(0));
  return m;
}

Poly pullback(const Poly& p, const AffineMap& map) {
  if (p.dim() != map.out_dim && !p.is_zero()) throw std::invalid_argument("pullback: dimension mismatch");
  std::vector<Poly> coord;
  for (int i = 0; i < map.out_dim; ++i) coord.push_back(Poly::affine(map.offset[i], map.matrix[i]));
  // image of x^e is the image of x^(e - unit_i) times coord_i, i the first nonzero exponent
  std::map<Exponent, Poly, GradedLex> images;
  images.emplace(Exponent{}, Poly::constant(map.in_dim, 1));
  std::function<const Poly&(const Exponent&)> image = [&](const Exponent& e) -> const Poly& {
    auto it = images.find(e);
    if (it != images.end()) return it->second;
    Exponent lower = e;
    int i = 0;
    while (lower[i] == 0) ++i;
    --lower[i];
    Poly t = image(lower) * coord[i];
    return images.emplace(e, std::move(t)).first->second;
  };
  Poly r(map.in_dim);
  for (const auto& [e, c] : p.terms()) r += c * image(e);
  return r;
}

VecPoly pullback(const VecPoly& v, const AffineMap& map) {
  std::vector<Poly> comps;
  for (const auto& c : v.components()) comps.push_back(pullback(c, map));
  return VecPoly(std::move(comps));
}

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

Rational integrate_reference_simplex(const Poly& p) {
  const int n = p.dim();
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_class num = 1;
    for (int i = 0; i < n; ++i) num *= factorial(e[i]);
    Rational m(num, factorial(static_cast<unsigned>(total_degree(e) + n)));
    m.canonicalize();
    s += c * m;
  }
  return s;
}

Rational integrate_unit_box(const Poly& p) {
  const int n = p.dim();
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_class den = 1;
    for (int i = 0; i < n; ++i) den *= (e[i] + 1);
    Rational m(1, den);
    m.canonicalize();
    s += c * m;
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string to_text(const Poly& p) {
  if (p.is_zero()) return "0";
  static const char* names[3] = {"x", "y", "z"};
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (int i = 0; i < p.dim(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(static_cast<int>(e[i]));
    }
    Rational mag = abs(c);
    if (mono.empty()) {
      out << to_string(mag);
    } else if (mag == 1) {
      out << mono;
    } else {
      out << to_string(mag) << "*" << mono;
    }
  }
  return out.str();
}

std::string to_text(const VecPoly& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += to_text(v[i]);
  }
  return s + ")";
}

}  // namespace korn
