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

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "korn/driver.hpp"
#include "korn/korn.hpp"
#include "korn/mesh_io.hpp"
#include "korn/sharpness.hpp"
#include "support.hpp"

using namespace korn;

namespace {

KernelOptions opts(bool phi, JumpControl jumps = JumpControl::none) {
  KernelOptions o;
  o.include_phi = phi;
  o.jump_control = jumps;
  return o;
}

Mesh reversed(const Mesh& m) {
  std::vector<Cell> cells(m.cells().rbegin(), m.cells().rend());
  return Mesh(cells);
}

}  // namespace

TEST_SUITE("korn") {
  TEST_CASE("jump is second cell minus first cell") {
    Mesh sq = make_two_square_domain();
    PwField u{{VecPoly::constant(2, {0, 0}), VecPoly::constant(2, {1, 2})}};
    const int f = sq.interior_faces()[0];
    JumpTrace jt = jump_on_face(sq, u, f);
    CHECK(jt.normal_part == Poly::constant(1, 1));
    REQUIRE(jt.tangential_part.size() == 1);
    CHECK(jt.tangential_part[0] == Poly::constant(1, 2));
    // on a boundary face the jump is the trace itself
    const int b = sq.boundary_faces()[0];
    JumpTrace bt = jump_on_face(sq, u, b);
    CHECK(bt.jump == restrict_to_face(u.pieces[static_cast<std::size_t>(sq.faces()[b].first_cell)], sq.faces()[b]));
  }

  TEST_CASE("projected jumps split the normal part into mean and zero-mean pieces") {
    Mesh sq = make_two_square_domain();
    // piece 1 minus piece 0 has normal part 1 + 3y on the face x = 0
    PwField u{{VecPoly(2, 2), VecPoly({Poly::constant(2, 1) + Rational(3) * Poly::variable(2, 1), Poly(2)})}};
    const Face& f = sq.faces()[sq.interior_faces()[0]];
    ProjectedJump pj = project_jump(f, jump_on_face(sq, u, sq.interior_faces()[0]));
    CHECK(pj.pi1_normal == pj.pi0_normal + pj.pi10_normal);
    CHECK(pj.pi0_normal.degree() <= 0);
    CHECK(integrate_face(pj.pi10_normal, f) == 0);
    CHECK(integrate_face(pj.pi1_normal, f) == integrate_face(jump_on_face(sq, u, sq.interior_faces()[0]).normal_part, f));
  }

  TEST_CASE("broken rigid motions on the two-square domain") {
    Mesh sq = make_two_square_domain();
    KernelRun free = run_kernel("rm-piecewise", sq, opts(false));
    CHECK(free.report.kernel_dim == 6);
    CHECK(free.report.expected == 3);
    CHECK_FALSE(free.report.holds);
    CHECK(free.matches());
    KernelRun ctl = run_kernel("rm-piecewise", sq, opts(true, JumpControl::minimal));
    CHECK(ctl.report.kernel_dim == 2);
    CHECK(ctl.report.expected == 2);
    CHECK(ctl.report.holds);
    KernelRun noprobe = run_kernel("rm-piecewise", sq, opts(false, JumpControl::minimal));
    CHECK(noprobe.report.kernel_dim == 3);
    CHECK(noprobe.report.holds);
  }

  TEST_CASE("broken rigid motions on the two-cube domain") {
    KernelRun r = run_kernel("rm-piecewise", make_two_cube_domain(), opts(true, JumpControl::minimal));
    CHECK(r.report.kernel_dim == 3);
    CHECK(r.report.expected == 3);
    CHECK(r.report.holds);
  }

  TEST_CASE("continuous P1 on a 2x2 triangulation") {
    Mesh m = builtin_mesh("square-2x2");
    KernelRun a = run_kernel("p1-continuous", m, opts(false));
    CHECK(a.report.kernel_dim == 3);
    CHECK(a.report.expected == 3);
    CHECK(a.report.holds);
    KernelRun b = run_kernel("p1-continuous", m, opts(true));
    CHECK(b.report.kernel_dim == 2);
    CHECK(b.report.holds);
    CHECK(b.matches());
  }

  TEST_CASE("Crouzeix-Raviart fails with an explicit witness") {
    Mesh m = builtin_mesh("two-square-simplicial");
    KernelRun r = run_kernel("cr-2d", m, opts(false));
    CHECK_FALSE(r.report.holds);
    CHECK(r.report.kernel_dim > r.report.expected);
    CHECK(r.matches());
    REQUIRE(r.report.witness.has_value());
    const PwField& w = *r.report.witness;
    CHECK(strain_norm_sq(m, w) == 0);
    CHECK(sgn(h1_seminorm_sq(m, w)) > 0);
    // the witness is not a global rigid motion: some piece differs from another
    bool differs = false;
    for (const auto& p : w.pieces) differs = differs || !(p - w.pieces[0]).is_zero();
    CHECK(differs);
    KernelRun with_phi = run_kernel("cr-2d", m, opts(true));
    CHECK_FALSE(with_phi.report.holds);
  }

  TEST_CASE("unknown spaces and mismatched meshes are rejected") {
    CHECK_THROWS_AS(run_kernel("no-such-space", make_two_square_domain(), opts(true)), std::invalid_argument);
    // element on a mesh of the wrong dimension
    CHECK_THROWS_AS(run_kernel("cr-3d", builtin_mesh("square-2x2"), opts(true)), std::invalid_argument);
    // element spaces need simplices
    CHECK_THROWS_AS(run_kernel("cr-2d", make_two_square_domain(), opts(true)), std::invalid_argument);
    auto names = kernel_space_names();
    CHECK(std::find(names.begin(), names.end(), "p1-continuous") != names.end());
    CHECK(std::find(names.begin(), names.end(), "hdiv-rt1-y1-2d") != names.end());
  }

  TEST_CASE("coverage verdicts match the registry and the kernel test on the simplex pair") {
    for (const auto& e : element_registry()) {
      CAPTURE(e.name);
      KornReport cov = dof_coverage_test(e);
      CHECK(cov.test == "coverage");
      CHECK(cov.holds == e.expected_korn);
      CHECK(cov.holds == (cov.kernel_dim == 0));
      KernelRun k = run_kernel(e.name, make_simplex_pair(e.dimension), opts(false));
      CHECK(k.report.holds == cov.holds);
    }
  }

  TEST_CASE("verdicts do not depend on cell numbering") {
    Mesh m = builtin_mesh("square-2x2");
    Mesh r = reversed(m);
    for (bool phi : {false, true}) {
      auto a = run_kernel("p1-continuous", m, opts(phi)).report;
      auto b = run_kernel("p1-continuous", r, opts(phi)).report;
      CHECK(a.kernel_dim == b.kernel_dim);
      CHECK(a.holds == b.holds);
    }
    Mesh pair = builtin_mesh("simplex-pair-2d");
    auto a = run_kernel("cr-2d", pair, opts(false)).report;
    auto b = run_kernel("cr-2d", reversed(pair), opts(false)).report;
    CHECK(a.kernel_dim == b.kernel_dim);
    CHECK(a.holds == b.holds);
  }

  TEST_CASE("local rigid-motion projection keeps mean and mean curl") {
    Cell tri = Cell::simplex({{0, 0}, {2, 0}, {1, 3}});
    VecPoly v({Poly::variable(2, 0) * Poly::variable(2, 1), Poly::variable(2, 0) * Poly::variable(2, 0)});
    VecPoly p = local_rm_projection(v, tri).field();
    for (std::size_t i = 0; i < 2; ++i) CHECK(integrate_cell(v[i] - p[i], tri) == 0);
    CHECK(integrate_cell(curl2_vector(v) - curl2_vector(p), tri) == 0);
  }

  TEST_CASE("Phi vanishes on constants only among rigid motions") {
    Mesh sq = make_two_square_domain();
    PwField c{{VecPoly::constant(2, {3, -1}), VecPoly::constant(2, {3, -1})}};
    CHECK(phi_is_zero(sq, c));
    VecPoly rot({-Poly::variable(2, 1), Poly::variable(2, 0)});
    PwField r{{rot, rot}};
    CHECK_FALSE(phi_is_zero(sq, r));
    PhiResult pr = phi_seminorm(sq, r);
    CHECK(pr.true_measure);
    CHECK(sgn(pr.phi_sq) > 0);
  }

  TEST_CASE("estimator: positive on conforming P1, zero once a condition is dropped") {
    Mesh m = builtin_mesh("square-2x2");
    PiecewiseSpace p1space =
        make_piecewise_space(m, "p1-continuous", basis_vector_P(2, 1).generators, find_dof_set("p1-trace"));
    EstimateOptions eo;
    KornEstimate est = korn_constant_estimate(m, p1space, eo);
    CHECK(est.value > 1e-3);

    for (int dim : {2, 3}) {
      Mesh dom = canonical_domain(dim);
      PiecewiseSpace rm = make_piecewise_space(dom, "rm-piecewise", basis_RM(dim).generators, std::nullopt);
      EstimateOptions full;
      full.functionals = sharpness_functionals;
      CHECK(korn_constant_estimate(dom, rm, full).value > 1e-3);
      const int kmax = dim == 2 ? 3 : 6;
      for (int k = 1; k <= kmax; ++k) {
        EstimateOptions drop = full;
        drop.dropped = {condition_set(dim, k).violated};
        CAPTURE(k);
        CHECK(std::abs(korn_constant_estimate(dom, rm, drop).value) < 1e-10);
      }
    }
  }

  TEST_CASE("JSON and text reports carry the same verdict") {
    auto r = run_kernel("cr-2d", builtin_mesh("two-square-simplicial"), opts(false)).report;
    auto j = nlohmann::json::parse(to_json(r));
    CHECK(j.at("element") == "cr-2d");
    CHECK(j.at("verdict") == verdict_text(r.holds));
    CHECK(j.at("kernel_dim") == r.kernel_dim);
    CHECK(j.at("expected") == r.expected);
    CHECK(j.contains("witness"));
    CHECK(j.at("residuals").is_object());
    for (const auto& [k, v] : j.at("residuals").items()) CHECK(v.is_string());
    CHECK(to_text(r).find(verdict_text(r.holds)) != std::string::npos);
    auto ok = run_kernel("p1-continuous", builtin_mesh("square-2x2"), opts(true)).report;
    auto jo = nlohmann::json::parse(to_json(ok));
    CHECK(jo.at("verdict") == verdict_text(true));
    CHECK_FALSE(jo.contains("witness"));
    CHECK(verdict_text(true) != verdict_text(false));
  }
}
