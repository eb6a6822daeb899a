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

#include <cstdlib>
#include <random>
#include <string>

#include "korn/geometry.hpp"
#include "korn/linalg.hpp"
#include "korn/poly.hpp"
#include "korn/spaces.hpp"

namespace korn::testing {

/// Number of random inputs per property.
inline constexpr int kPropertyTrials = 50;

/// Seed from KORN_TEST_SEED when set, otherwise a fixed default.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("KORN_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611ULL;
}

class RationalSource {
 public:
  explicit RationalSource(std::uint64_t salt = 0) : gen_(test_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  Rational rational(int max_num = 9, int max_den = 7) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    Rational r(num(gen_), den(gen_));
    r.canonicalize();
    return r;
  }
  Rational nonzero(int max_num = 9, int max_den = 7) {
    Rational r = rational(max_num, max_den);
    while (sgn(r) == 0) r = rational(max_num, max_den);
    return r;
  }
  Vector vector(int n) {
    Vector v;
    for (int i = 0; i < n; ++i) v.push_back(rational());
    return v;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Poly poly(int dim, int degree) {
    Poly p(dim);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b)
        for (int c = 0; a + b + c <= degree; ++c) {
          if (dim == 2 && c > 0) continue;
          p.add_term({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)},
                     rational());
        }
    return p;
  }
  VecPoly vec_poly(int components, int dim, int degree) {
    std::vector<Poly> comps;
    for (int i = 0; i < components; ++i) comps.push_back(poly(dim, degree));
    return VecPoly(comps);
  }
  RigidMotion rigid_motion(int dim) {
    RigidMotion m = RigidMotion::zero(dim);
    m.translation = vector(dim);
    m.skew = vector(dim == 2 ? 1 : 3);
    return m;
  }
  /// Nondegenerate simplex with rational vertices.
  Cell simplex(int dim) {
    while (true) {
      std::vector<Point> pts;
      for (int i = 0; i <= dim; ++i) pts.push_back(vector(dim));
      try {
        return Cell::simplex(pts);
      } catch (const std::invalid_argument&) {
      }
    }
  }
  /// Invertible affine map of R^dim.
  AffineMap affine_map(int dim) {
    while (true) {
      AffineMap m;
      m.in_dim = m.out_dim = dim;
      for (int i = 0; i < dim; ++i) m.matrix.push_back(vector(dim));
      m.offset = vector(dim);
      if (sgn(determinant(RationalMatrix::from_rows(m.matrix, dim))) != 0) return m;
    }
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace korn::testing
