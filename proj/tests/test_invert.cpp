// Copyright 2026 The vcomb authors
//
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "vcomb/invert.hpp"

using namespace vcomb;

namespace {

double half_gap_to_identity(const ChoiOperator& composed, int d) {
  return 0.5 * trace_norm(composed.matrix - choi_identity(d).matrix);
}

}  // namespace

TEST_CASE("family validation") {
  CHECK_NOTHROW(validate_family({2, {0.0, 0.5}}));
  CHECK_THROWS_AS(validate_family({1, {0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_family({2, {}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_family({2, {0.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_family({2, {-0.1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_family({2, {0.3, 0.3}}), InfeasibleError);
}

TEST_CASE("solved coefficients match the independent closed forms") {
  SUBCASE("{0, 0.5} on one slot") {
    const DepolarizingInverter inv =
        build_depolarizing_inverter({2, {0.0, 0.5}}, 1);
    REQUIRE(inv.recipe.alphas.size() == 2);
    CHECK(inv.recipe.alphas[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv.recipe.alphas[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_id == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_apply[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_mix == doctest::Approx(0.0));
    CHECK(inv.recipe.gamma == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("{0.2, 0.5} on one slot") {
    const DepolarizingInverter inv =
        build_depolarizing_inverter({2, {0.2, 0.5}}, 1);
    CHECK(inv.recipe.alphas[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(inv.recipe.alphas[1] == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(inv.recipe.eta_id == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(inv.recipe.eta_apply[0] == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(inv.recipe.eta_mix == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(inv.recipe.gamma == doctest::Approx(6.0).epsilon(1e-12));
  }
  SUBCASE("{0, 0.25, 0.5} on two slots") {
    const DepolarizingInverter inv =
        build_depolarizing_inverter({2, {0.0, 0.25, 0.5}}, 2);
    CHECK(inv.recipe.alphas[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv.recipe.alphas[1] == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(inv.recipe.alphas[2] == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_id == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_apply[0] == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_apply[1] == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(inv.recipe.gamma == doctest::Approx(13.0).epsilon(1e-12));
  }
  SUBCASE("{0, 0.3, 0.6} on two slots") {
    const DepolarizingInverter inv =
        build_depolarizing_inverter({2, {0.0, 0.3, 0.6}}, 2);
    CHECK(inv.recipe.alphas[1] == doctest::Approx(33.0 / 14.0).epsilon(1e-12));
    CHECK(inv.recipe.alphas[2] == doctest::Approx(69.0 / 14.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_id == doctest::Approx(69.0 / 14.0).epsilon(1e-12));
    CHECK(inv.recipe.eta_apply[0] == doctest::Approx(-7.5).epsilon(1e-12));
    CHECK(inv.recipe.eta_apply[1] == doctest::Approx(25.0 / 7.0).epsilon(1e-12));
    CHECK(inv.recipe.gamma == doctest::Approx(16.0).epsilon(1e-12));
  }
}

TEST_CASE("inverter contracts to the exact inverse on family members") {
  const DepolarizingInverter inv =
      build_depolarizing_inverter({2, {0.0, 0.25, 0.5}}, 2);
  CHECK(validate_virtual(inv.comb).pass);
  for (double p : {0.0, 0.25, 0.5}) {
    const ChoiOperator dep = choi_depolarizing(2, p);
    const ChoiOperator composed = link(dep, contract(inv.comb, dep));
    CHECK(half_gap_to_identity(composed, 2) < 1e-9);
  }
  // Off the family the inversion degrades by |f_n| (d^2-1)/d; for {0,0.5} at
  // p=0.3 this is 0.12 * 3/2.
  const DepolarizingInverter one = build_depolarizing_inverter({2, {0.0, 0.5}}, 1);
  const ChoiOperator dep = choi_depolarizing(2, 0.3);
  const ChoiOperator composed = link(dep, contract(one.comb, dep));
  CHECK(half_gap_to_identity(composed, 2) == doctest::Approx(0.18).epsilon(1e-9));
}

TEST_CASE("inverter works at dimension three") {
  const DepolarizingInverter inv = build_depolarizing_inverter({3, {0.1, 0.4}}, 1);
  CHECK(validate_virtual(inv.comb).pass);
  for (double p : {0.1, 0.4}) {
    const ChoiOperator dep = choi_depolarizing(3, p);
    const ChoiOperator composed = link(dep, contract(inv.comb, dep));
    CHECK(half_gap_to_identity(composed, 3) < 1e-9);
  }
}

TEST_CASE("feasibility diagnosis") {
  SUBCASE("overdetermined families are rank-deficient in the augmented column") {
    const FeasibilityReport report =
        check_feasibility({2, {0.0, 0.25, 0.5}}, 1);
    CHECK_FALSE(report.feasible);
    CHECK(report.rank_a == 2);
    CHECK(report.rank_ab == 3);
    CHECK(report.residual > 1e-3);
    CHECK(report.negativity_witness == doctest::Approx(-0.5).epsilon(1e-12));
  }
  SUBCASE("matched families are solvable") {
    const FeasibilityReport report = check_feasibility({2, {0.0, 0.5}}, 1);
    CHECK(report.feasible);
    CHECK(report.rank_a == report.rank_ab);
    CHECK(report.residual < 1e-10);
  }
  SUBCASE("slack slots remain solvable") {
    const FeasibilityReport report = check_feasibility({2, {0.0, 0.5}}, 2);
    CHECK(report.feasible);
  }
  SUBCASE("build rejects size mismatch with a report attached") {
    try {
      build_depolarizing_inverter({2, {0.0, 0.25, 0.5}}, 1);
      FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
      CHECK(e.report.rank_a < e.report.rank_ab);
    }
  }
}

TEST_CASE("pair inverter reverses both channels of a random pair") {
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 5 && seed < 50; ++seed) {
    const ChoiOperator n0 = random_channel(2, 2, 1000 + seed);
    const ChoiOperator n1 = random_channel(2, 2, 2000 + seed);
    if (transfer_condition(n0) > 1e4 || transfer_condition(n1) > 1e4) continue;
    ++tested;

    const VirtualComb vc = build_pair_inverter(n0, n1);
    const VirtualReport report = validate_virtual(vc);
    CHECK(report.pass);
    for (double r : report.recursion_residuals) CHECK(r < 1e-8);
    CHECK(vc.gamma() >= 1.0);

    for (const ChoiOperator* n : {&n0, &n1}) {
      const ChoiOperator composed = link(*n, contract(vc, *n));
      CHECK(half_gap_to_identity(composed, 2) < 1e-7);
    }
  }
  REQUIRE(tested == 5);
}

TEST_CASE("pair inverter rejects bad inputs") {
  const ChoiOperator ok = random_channel(2, 2, 77);
  CHECK_THROWS_AS(build_pair_inverter(ok, choi_depolarizing(2, 1.0)),
                  std::runtime_error);  // singular partner
  CHECK_THROWS_AS(build_pair_inverter(random_channel(2, 3, 5), ok),
                  std::invalid_argument);  // unequal dims
}

TEST_CASE("universal unitary inverter") {
  for (int d : {2, 3}) {
    const VirtualComb vc = build_unitary_inverter(d);
    CHECK(vc.gamma() == doctest::Approx(d * d - 1.0).epsilon(1e-12));
    REQUIRE(vc.terms.size() == 2);
    for (const VirtualTerm& term : vc.terms)
      CHECK(validate_comb(term.comb.choi, term.comb.layout).pass);

    // Contract against a phase gate and a Haar sample; expect the adjoint.
    Matrix phase = identity_matrix(d);
    phase(d - 1, d - 1) = Complex(0.0, 1.0);
    for (const Matrix& u : {phase, random_unitary(d, 17)}) {
      const ChoiOperator got = contract(vc, choi_unitary(u));
      const ChoiOperator want = choi_unitary(Matrix(u.adjoint()));
      CHECK(max_abs(got.matrix - want.matrix) < 1e-9);
    }
  }
}

TEST_CASE("overhead from optimal fidelity") {
  const double expected[] = {3, 8, 15, 24, 35};
  for (int d = 2; d <= 6; ++d) {
    const double nu = overhead_from_fidelity(d, 1, 2.0 / (d * d));
    CHECK(nu == doctest::Approx(expected[d - 2]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(overhead_from_fidelity(1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(overhead_from_fidelity(2, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(overhead_from_fidelity(2, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(overhead_from_fidelity(2, 1, 1.5), std::invalid_argument);
}
