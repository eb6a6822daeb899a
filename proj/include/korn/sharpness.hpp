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

#include <string>
#include <vector>

#include "korn/korn.hpp"

namespace korn {

// Sharpness experiments on the two canonical two-cell domains. Fields are piecewise rigid
// motions; the coefficient vector lists cell 0 then cell 1, each as
// (a, b, c) in 2D, field (a, b) + c (-y, x), or
// (a, b, c, d, e, f) in 3D, field (a, b, c) + [[0, d, e], [-d, 0, f], [-e, -f, 0]] x.

/// The interface conditions on the shared face: 2D "pi0-normal", "pi10-normal",
/// "pi0-tangential" (moments against 1, y and 1); 3D "A1".."A6".
std::vector<MinimalFunctional> sharpness_functionals(const Face& face);

struct ConditionSet {
  int dimension = 2;
  int k = 1;
  std::vector<std::string> retained;
  std::string violated;
  std::string name() const;  ///< "E1".."E3" or "F1".."F6"
};

/// Throws std::invalid_argument unless k is in 1..3 (2D) or 1..6 (3D).
ConditionSet condition_set(int dimension, int k);
Mesh canonical_domain(int dimension);
std::vector<std::string> coefficient_names(int dimension);

struct CounterexampleField {
  ConditionSet conditions;
  Vector coefficients;
  PwField field;
  std::vector<std::string> notes;
};

CounterexampleField build_counterexample(const ConditionSet& cs);
/// Piecewise rigid motion on the canonical domain from a coefficient vector.
PwField piecewise_rm(int dimension, const Vector& coefficients);

struct SharpnessReport {
  std::string name;
  std::vector<std::pair<std::string, Rational>> coefficients;
  Rational strain_norm_sq;
  std::vector<Rational> phi_moments;
  std::vector<std::pair<std::string, Rational>> retained;
  std::pair<std::string, Rational> violated;
  Rational h1_seminorm_sq;
  bool strain_zero = false;
  bool phi_zero = false;
  bool retained_zero = false;
  bool violated_nonzero = false;
  bool h1_positive = false;
  bool all_pass() const { return strain_zero && phi_zero && retained_zero && violated_nonzero && h1_positive; }
  std::vector<std::string> notes;
};

SharpnessReport verify_sharpness(const PwField& u, const ConditionSet& cs);
SharpnessReport verify_sharpness(const CounterexampleField& u);

std::string to_json(const SharpnessReport& r);
std::string to_text(const SharpnessReport& r);

/// A linear form in the coefficient vector, compared against a printed closed form.
struct FormRow {
  std::string name;
  Vector computed;
  Vector printed;
  bool agrees() const { return computed == printed; }
};

std::string form_text(const Vector& coeffs, int dimension);

/// Boundary integrals of u . m for the printed boundary rigid motions.
std::vector<FormRow> boundary_moment_table(int dimension);
/// Interface integrals: 2D moment table and 3D A1..A6.
std::vector<FormRow> jump_integral_table(int dimension);

}  // namespace korn
