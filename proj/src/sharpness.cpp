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

#include "korn/sharpness.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace korn {

namespace {

// Coefficient slots within one cell.
enum Slot { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5 };

std::size_t per_cell(int dim) { return dim == 2 ? 3 : 6; }

/// n2 - n1 for slot k.
Vector bar(int dim, int k, const Rational& s = 1) {
  Vector v(2 * per_cell(dim));
  v[k] = -s;
  v[per_cell(dim) + k] = s;
  return v;
}

/// n1 + n2 for slot k.
Vector sum(int dim, int k, const Rational& s = 1) {
  Vector v(2 * per_cell(dim));
  v[k] = s;
  v[per_cell(dim) + k] = s;
  return v;
}

/// Coefficient of slot k on cell i (0-based).
Vector single(int dim, int cell, int k, const Rational& s = 1) {
  Vector v(2 * per_cell(dim));
  v[cell * per_cell(dim) + k] = s;
  return v;
}

Vector combine(std::initializer_list<Vector> parts) {
  Vector out;
  for (const auto& p : parts) out = out.empty() ? p : out + p;
  return out;
}

int interface_face(const Mesh& mesh) {
  if (mesh.interior_faces().size() != 1) throw std::logic_error("sharpness: expected one interior face");
  return mesh.interior_faces()[0];
}

/// Linear form of a functional that is linear in the field, read off on unit coefficient vectors.
template <typename Fn>
Vector linear_form(int dim, Fn&& fn) {
  const std::size_t n = 2 * per_cell(dim);
  Vector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n);
    e[j] = 1;
    out[j] = fn(piecewise_rm(dim, e));
  }
  return out;
}

Rational condition_value(const Mesh& mesh, const PwField& u, const std::string& label) {
  const int fid = interface_face(mesh);
  const Face& face = mesh.faces()[fid];
  JumpTrace jt = jump_on_face(mesh, u, fid);
  for (const auto& fn : sharpness_functionals(face)) {
    if (fn.label() == label) return apply_minimal(fn, jt, face);
  }
  throw std::invalid_argument("sharpness: unknown condition " + label);
}

std::vector<Vector> phi_forms(const Mesh& mesh) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < basis_RM_boundary(mesh).generators.size(); ++i) {
    out.push_back(linear_form(mesh.dim(), [&](const PwField& u) { return phi_seminorm(mesh, u).moments[i]; }));
  }
  return out;
}

struct Recipe {
  std::vector<std::pair<Vector, Rational>> equations;
  std::vector<std::string> notes;
};

Recipe recipe_of(const ConditionSet& cs) {
  const int d = cs.dimension;
  Recipe r;
  auto eq = [&](Vector row, Rational rhs = 0) { r.equations.emplace_back(std::move(row), rhs); };
  const Rational half(1, 2);
  if (d == 2) {
    switch (cs.k) {
      case 1:
        eq(bar(d, A) - bar(d, C, Rational(2, 3)));
        eq(bar(d, B));
        eq(single(d, 0, C), half);
        eq(single(d, 1, C), -half);
        break;
      case 2:
        eq(bar(d, A) - bar(d, C, half));
        eq(bar(d, B));
        eq(single(d, 0, C), half);
        eq(single(d, 1, C), -half);
        break;
      default:
        eq(bar(d, A));
        eq(bar(d, C));
        eq(single(d, 0, C), 1);
        r.notes.push_back(
            "recipe corrected: c1 = -c2 is incompatible with c2 - c1 = 0; using c1 = c2 = 1 and the "
            "boundary moment condition, which forces b2 - b1 = -9/4");
        break;
    }
    return r;
  }
  switch (cs.k) {
    case 1:
      eq(bar(d, D) + bar(d, F));
      eq(bar(d, B) + bar(d, F, Rational(7, 6)));
      for (int k : {A, C, E}) eq(bar(d, k));
      eq(single(d, 1, D), half);
      eq(single(d, 0, D), -half);
      eq(single(d, 1, F), -half);
      eq(single(d, 0, F), half);
      break;
    case 2:
      eq(bar(d, B) - bar(d, D, half));
      eq(bar(d, F));
      for (int k : {A, C, E}) eq(bar(d, k));
      eq(single(d, 1, D), half);
      eq(single(d, 0, D), -half);
      eq(sum(d, F));
      break;
    case 3:
      eq(bar(d, B) + bar(d, F, half));
      eq(bar(d, D));
      for (int k : {A, C, E}) eq(bar(d, k));
      eq(single(d, 1, F), half);
      eq(single(d, 0, F), -half);
      eq(sum(d, D));
      r.notes.push_back("recipe corrected: b2 - b1 = (1/2)(f2 - f1) leaves A1 nonzero; using -(1/2)(f2 - f1)");
      break;
    default:
      if (cs.k == 4) {
        eq(bar(d, C) - bar(d, E, half));
        eq(bar(d, A) + bar(d, E, Rational(5, 6)));
        r.notes.push_back("recipe corrected: a2 - a1 = -(1/6)(e2 - e1) leaves A6 nonzero; using -(5/6)(e2 - e1)");
      } else if (cs.k == 5) {
        eq(bar(d, A) + bar(d, E, half));
        eq(bar(d, C) - bar(d, E, Rational(5, 6)));
        r.notes.push_back("recipe corrected: c2 - c1 = (1/6)(e2 - e1) leaves A6 nonzero; using (5/6)(e2 - e1)");
      } else {
        eq(bar(d, C) - bar(d, E, half));
        eq(bar(d, A) + bar(d, C));
      }
      for (int k : {B, D, F}) eq(bar(d, k));
      if (cs.k == 4 || cs.k == 5) {
        r.notes.push_back("recipe reads both \"d2 - d1 = 0\" and \"b2 - b1 = d2 - d1 = f2 - f1 = 0\"; "
                          "using the consistent reading, all normal-jump differences zero");
      }
      eq(single(d, 1, E), half);
      eq(single(d, 0, E), -half);
      break;
  }
  return r;
}

nlohmann::ordered_json pairs_json(const std::vector<std::pair<std::string, Rational>>& xs) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : xs) j[k] = to_string(v);
  return j;
}

}  // namespace

std::vector<MinimalFunctional> sharpness_functionals(const Face& face) {
  const int d = face.dim;
  auto scalar = [&](const Poly& ambient) { return VecPoly::scalar(restrict_to_face(ambient, face)); };
  auto vec = [&](VecPoly ambient) { return restrict_to_face(ambient, face); };
  std::vector<MinimalFunctional> out;
  if (d == 2) {
    out.push_back({"normal", 0, scalar(Poly::constant(2, 1)), "pi0-normal"});
    out.push_back({"normal", 1, scalar(Poly::variable(2, 1)), "pi10-normal"});
    out.push_back({"tangential", 0, scalar(Poly::constant(2, 1)), "pi0-tangential"});
    return out;
  }
  const Poly one = Poly::constant(3, 1), x = Poly::variable(3, 0), z = Poly::variable(3, 2), zero(3);
  out.push_back({"normal", 0, scalar(one), "A1"});
  out.push_back({"normal", 1, scalar(x), "A2"});
  out.push_back({"normal", 2, scalar(z), "A3"});
  out.push_back({"tangential", 0, vec(VecPoly({zero, zero, one})), "A4"});
  out.push_back({"tangential", 1, vec(VecPoly({one, zero, zero})), "A5"});
  out.push_back({"tangential", 2, vec(VecPoly({x, zero, z})), "A6"});
  return out;
}

std::string ConditionSet::name() const { return (dimension == 2 ? "E" : "F") + std::to_string(k); }

ConditionSet condition_set(int dimension, int k) {
  std::vector<std::string> all;
  if (dimension == 2) {
    all = {"pi0-normal", "pi10-normal", "pi0-tangential"};
  } else if (dimension == 3) {
    all = {"A1", "A2", "A3", "A4", "A5", "A6"};
  } else {
    throw std::invalid_argument("condition_set: dimension must be 2 or 3");
  }
  if (k < 1 || k > static_cast<int>(all.size())) {
    throw std::invalid_argument("condition_set: k must be in 1.." + std::to_string(all.size()) + " for dimension " +
                                std::to_string(dimension));
  }
  ConditionSet cs;
  cs.dimension = dimension;
  cs.k = k;
  cs.violated = all[k - 1];
  for (int i = 0; i < static_cast<int>(all.size()); ++i) {
    if (i != k - 1) cs.retained.push_back(all[i]);
  }
  return cs;
}

Mesh canonical_domain(int dimension) {
  if (dimension == 2) return make_two_square_domain();
  if (dimension == 3) return make_two_cube_domain();
  throw std::invalid_argument("canonical_domain: dimension must be 2 or 3");
}

std::vector<std::string> coefficient_names(int dimension) {
  const std::string letters = dimension == 2 ? "abc" : "abcdef";
  std::vector<std::string> out;
  for (int cell = 1; cell <= 2; ++cell)
    for (char ch : letters) out.push_back(std::string(1, ch) + std::to_string(cell));
  return out;
}

PwField piecewise_rm(int dimension, const Vector& coefficients) {
  const std::size_t m = per_cell(dimension);
  if (coefficients.size() != 2 * m) throw std::invalid_argument("piecewise_rm: wrong coefficient count");
  PwField u;
  for (std::size_t cell = 0; cell < 2; ++cell) {
    RigidMotion rm = RigidMotion::zero(dimension);
    for (int k = 0; k < dimension; ++k) rm.translation[k] = coefficients[cell * m + k];
    for (std::size_t k = 0; k < rm.skew.size(); ++k) rm.skew[k] = coefficients[cell * m + dimension + k];
    u.pieces.push_back(rm.field());
  }
  return u;
}

CounterexampleField build_counterexample(const ConditionSet& cs) {
  const Mesh mesh = canonical_domain(cs.dimension);
  Recipe recipe = recipe_of(cs);
  const std::size_t n = 2 * per_cell(cs.dimension);
  RationalMatrix m(0, n);
  Vector rhs;
  for (const auto& [row, value] : recipe.equations) {
    m.append_row(row);
    rhs.push_back(value);
  }
  for (const auto& row : phi_forms(mesh)) {
    m.append_row(row);
    rhs.push_back(0);
  }
  CounterexampleField out;
  out.conditions = cs;
  out.coefficients = min_norm_solution(m, rhs);
  if (m.apply(out.coefficients) != rhs) {
    throw std::logic_error("build_counterexample: inconsistent recipe for " + cs.name());
  }
  out.field = piecewise_rm(cs.dimension, out.coefficients);
  out.notes = recipe.notes;
  return out;
}

SharpnessReport verify_sharpness(const PwField& u, const ConditionSet& cs) {
  const Mesh mesh = canonical_domain(cs.dimension);
  SharpnessReport r;
  r.name = cs.name();
  r.strain_norm_sq = strain_norm_sq(mesh, u);
  PhiResult phi = phi_seminorm(mesh, u);
  r.phi_moments = phi.moments;
  r.h1_seminorm_sq = h1_seminorm_sq(mesh, u);
  for (const auto& label : cs.retained) r.retained.emplace_back(label, condition_value(mesh, u, label));
  r.violated = {cs.violated, condition_value(mesh, u, cs.violated)};

  r.strain_zero = sgn(r.strain_norm_sq) == 0;
  r.phi_zero = true;
  for (const auto& x : r.phi_moments) r.phi_zero = r.phi_zero && sgn(x) == 0;
  r.retained_zero = true;
  for (const auto& [label, value] : r.retained) r.retained_zero = r.retained_zero && sgn(value) == 0;
  r.violated_nonzero = sgn(r.violated.second) != 0;
  r.h1_positive = sgn(r.h1_seminorm_sq) > 0;
  return r;
}

SharpnessReport verify_sharpness(const CounterexampleField& u) {
  SharpnessReport r = verify_sharpness(u.field, u.conditions);
  auto names = coefficient_names(u.conditions.dimension);
  for (std::size_t i = 0; i < names.size(); ++i) r.coefficients.emplace_back(names[i], u.coefficients.at(i));
  r.notes = u.notes;
  return r;
}

std::string to_json(const SharpnessReport& r) {
  nlohmann::ordered_json j;
  j["case"] = r.name;
  j["verdict"] = r.all_pass() ? "counterexample" : "not a counterexample";
  j["coefficients"] = pairs_json(r.coefficients);
  j["strain_norm_sq"] = to_string(r.strain_norm_sq);
  nlohmann::ordered_json phi = nlohmann::ordered_json::array();
  for (const auto& x : r.phi_moments) phi.push_back(to_string(x));
  j["phi_moments"] = phi;
  j["retained"] = pairs_json(r.retained);
  j["violated"] = pairs_json({r.violated});
  j["h1_seminorm_sq"] = to_string(r.h1_seminorm_sq);
  j["checks"] = {{"strain_zero", r.strain_zero},
                 {"phi_zero", r.phi_zero},
                 {"retained_zero", r.retained_zero},
                 {"violated_nonzero", r.violated_nonzero},
                 {"h1_positive", r.h1_positive}};
  j["notes"] = r.notes;
  return j.dump(2);
}

std::string to_text(const SharpnessReport& r) {
  std::ostringstream os;
  os << r.name << ": " << (r.all_pass() ? "counterexample" : "NOT a counterexample") << "\n";
  if (!r.coefficients.empty()) {
    os << "  coefficients:";
    for (const auto& [k, v] : r.coefficients) os << " " << k << "=" << to_string(v);
    os << "\n";
  }
  os << "  |D(u)|^2 = " << to_string(r.strain_norm_sq) << "\n";
  os << "  boundary moments:";
  for (const auto& x : r.phi_moments) os << " " << to_string(x);
  os << "\n";
  for (const auto& [k, v] : r.retained) os << "  " << k << " = " << to_string(v) << "\n";
  os << "  " << r.violated.first << " = " << to_string(r.violated.second) << " (dropped)\n";
  os << "  |u|_H1^2 = " << to_string(r.h1_seminorm_sq) << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

std::string form_text(const Vector& coeffs, int dimension) {
  auto names = coefficient_names(dimension);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    Rational c = coeffs[i];
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    Rational mag = abs(c);
    if (mag != 1) os << to_string(mag) << "*";
    os << names[i];
    first = false;
  }
  return first ? "0" : os.str();
}

std::vector<FormRow> boundary_moment_table(int dimension) {
  const Mesh mesh = canonical_domain(dimension);
  const BoundaryMeasure measure = boundary_measure(mesh);
  auto moment_form = [&](const VecPoly& m) {
    return linear_form(dimension, [&](const PwField& u) {
      Rational s = 0;
      for (int fid : mesh.boundary_faces()) {
        const Face& face = mesh.faces()[fid];
        s += measure.weights[fid] * integrate_on_face(dot(u.pieces[face.first_cell], m), face);
      }
      return s;
    });
  };
  const int d = dimension;
  const Poly one = Poly::constant(d, 1), x = Poly::variable(d, 0), y = Poly::variable(d, 1);
  std::vector<FormRow> rows;
  if (d == 2) {
    VecPoly m({one - Rational(2) * y, Rational(2) * x});
    rows.push_back({"m = (1 - 2y, 2x)", moment_form(m), combine({bar(d, B, 4), sum(d, C, Rational(9, 2))})});
    return rows;
  }
  const Poly z = Poly::variable(3, 2), zero(3);
  VecPoly m1({Rational(2) * z - one, zero, one - Rational(2) * x});
  VecPoly m2({Rational(2) * y, one - Rational(2) * x, zero});
  VecPoly m3({y, z - x, -y});
  Rational nine_thirds(9, 3);
  nine_thirds.canonicalize();
  rows.push_back({"m1 = (-1 + 2z, 0, 1 - 2x), printed coefficient 9/3", moment_form(m1), sum(d, E, nine_thirds)});
  rows.push_back({"m2 = (2y, 1 - 2x, 0)", moment_form(m2),
                  combine({bar(d, A, 6), bar(d, E, 3), sum(d, D, Rational(37, 6))})});
  rows.push_back({"m3 = (y, -x + z, -y)", moment_form(m3),
                  combine({bar(d, A, 3), bar(d, C, -3), bar(d, E, 3), sum(d, D, Rational(37, 12)),
                           sum(d, F, Rational(37, 12))})});
  return rows;
}

std::vector<FormRow> jump_integral_table(int dimension) {
  const Mesh mesh = canonical_domain(dimension);
  const int d = dimension;
  auto form = [&](const std::string& label) {
    return linear_form(d, [&](const PwField& u) { return condition_value(mesh, u, label); });
  };
  std::vector<FormRow> rows;
  if (d == 2) {
    rows.push_back({"pi0-normal", form("pi0-normal"), combine({bar(d, A), bar(d, C, Rational(-1, 2))})});
    rows.push_back({"pi10-normal", form("pi10-normal"),
                    combine({bar(d, A, Rational(1, 2)), bar(d, C, Rational(-1, 3))})});
    rows.push_back({"pi0-tangential", form("pi0-tangential"), bar(d, B)});
    return rows;
  }
  rows.push_back({"A1", form("A1"), combine({bar(d, B), bar(d, D, Rational(-1, 2)), bar(d, F, Rational(1, 2))})});
  rows.push_back({"A2", form("A2"),
                  combine({bar(d, B, Rational(1, 2)), bar(d, D, Rational(-1, 3)), bar(d, F, Rational(1, 4))})});
  rows.push_back({"A3", form("A3"),
                  combine({bar(d, B, Rational(1, 2)), bar(d, D, Rational(-1, 4)), bar(d, F, Rational(1, 3))})});
  rows.push_back({"A4", form("A4"), combine({bar(d, A), bar(d, E, Rational(1, 2))})});
  rows.push_back({"A5", form("A5"), combine({bar(d, C, -1), bar(d, E, Rational(1, 2))})});
  rows.push_back({"A6", form("A6"),
                  combine({bar(d, C, Rational(-1, 2)), bar(d, E, Rational(2, 3)), bar(d, A, Rational(1, 2))})});
  return rows;
}

}  // namespace korn
