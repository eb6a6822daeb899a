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

#include <cstddef>
#include <optional>
#include <vector>

#include "korn/rational.hpp"

namespace korn {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static RationalMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  void append_row(const Vector& row);
  RationalMatrix transpose() const;
  Vector apply(const Vector& x) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RationalMatrix reduced;            ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

RowEchelon row_reduce(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
Rational determinant(RationalMatrix m);

/// Basis of {x : m x = 0}, one vector per free column, in column order.
std::vector<Vector> nullspace(const RationalMatrix& m);

/// Indices of a maximal linearly independent subset of the columns (first-come order).
std::vector<std::size_t> independent_columns(const RationalMatrix& m);

/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const RationalMatrix& m, const Vector& b);

/// The solution of m x = b with least Euclidean norm. Throws std::domain_error when inconsistent.
Vector min_norm_solution(const RationalMatrix& m, const Vector& b);

/// Inverse of a square nonsingular matrix; throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace korn
