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

#include <cmath>
#include <stdexcept>

#include "vcomb/analysis.hpp"
#include "vcomb/comb.hpp"

using namespace vcomb;

TEST_CASE("residual polynomial for the {0, 0.5} inverter is 2p^2 - p") {
  const ErrorPolynomial f = build_error_polynomial({2, {0.0, 0.5}}, 1);
  CHECK(f(0.0) == 0.0);  // the factored evaluation hits the roots exactly
  CHECK(f(0.5) == 0.0);
  CHECK(f(0.25) == doctest::Approx(-0.125).epsilon(1e-12));
  CHECK(f(0.3) == doctest::Approx(-0.12).epsilon(1e-12));
  CHECK(f(0.9) == doctest::Approx(2 * 0.81 - 0.9).epsilon(1e-12));
}

TEST_CASE("scalar polynomial reproduces the matrix-norm gap") {
  // (1/2)||J(inverter after D_p) - J_id||_1 = |f(p)| (d^2-1)/d.
  const DepolarizingFamily family{2, {0.0, 0.5}};
  const DepolarizingInverter inv = build_depolarizing_inverter(family, 1);
  const ErrorPolynomial f = build_error_polynomial(family, 1);
  for (double p : {0.1, 0.3, 0.45}) {
    const ChoiOperator dep = choi_depolarizing(2, p);
    const ChoiOperator composed = link(dep, contract(inv.comb, dep));
    const double gap = 0.5 * trace_norm(composed.matrix - choi_identity(2).matrix);
    CHECK(gap == doctest::Approx(std::abs(f(p)) * 1.5).epsilon(1e-9));
  }
}

TEST_CASE("worst case over an interval") {
  const ErrorPolynomial f = build_error_polynomial({2, {0.0, 0.5}}, 1);
  const WorstCase wc = worst_case_bound(f, 0.0, 0.5, 2);
  CHECK(wc.p_star == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(wc.e_wc == doctest::Approx(0.375).epsilon(1e-9));

  CHECK_THROWS_AS(worst_case_bound(f, 0.5, 0.2, 2), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_bound(f, 0.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_bound(f, 0.0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("error curve on [0, 0.5] matches the closed-form rows") {
  const auto rows = wc_error_curve(0.0, 0.5, 3, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].slots == 1);
  CHECK(rows[0].p_star == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(rows[0].e_wc == doctest::Approx(0.375).epsilon(1e-9));
  CHECK(rows[1].p_star == doctest::Approx(0.1056625).epsilon(1e-4));
  CHECK(rows[1].e_wc == doctest::Approx(4.811252243245e-2).epsilon(1e-9));
  CHECK(rows[2].e_wc == doctest::Approx(1.0 / 120.0).epsilon(1e-9));
}

TEST_CASE("error curve decays without hitting a floating-point floor") {
  const auto rows = wc_error_curve(0.0, 0.2, 16, 2);
  REQUIRE(rows.size() == 16);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].e_wc > 0.0);
    if (i > 0) CHECK(rows[i].e_wc < rows[i - 1].e_wc);
  }
  // By n = 16 the true value sits far below double-epsilon relative to 1; the
  // factored evaluation must still resolve it.
  CHECK(rows[15].e_wc < 1e-15);
}

TEST_CASE("residual vanishes exactly on the grid nodes") {
  const double lo = 0.0, hi = 0.3;
  const int n = 4;
  DepolarizingFamily family;
  family.dim = 2;
  for (int k = 0; k <= n; ++k) family.params.push_back(lo + (hi - lo) * k / n);
  const ErrorPolynomial f = build_error_polynomial(family, n);
  for (double node : family.params) CHECK(std::abs(f(node)) <= 1e-12);
}

TEST_CASE("wider intervals never help") {
  const auto narrow = wc_error_curve(0.0, 0.2, 8, 2);
  const auto mid = wc_error_curve(0.0, 0.4, 8, 2);
  const auto wide = wc_error_curve(0.0, 0.6, 8, 2);
  for (int i = 0; i < 8; ++i) {
    CHECK(narrow[i].e_wc <= mid[i].e_wc + 1e-12);
    CHECK(mid[i].e_wc <= wide[i].e_wc + 1e-12);
  }
}

TEST_CASE("error curve argument validation") {
  CHECK_THROWS_AS(wc_error_curve(0.5, 0.2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(wc_error_curve(-0.1, 0.5, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(wc_error_curve(0.0, 1.0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(wc_error_curve(0.0, 0.5, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(wc_error_curve(0.0, 0.5, 31, 2), std::invalid_argument);
  CHECK_THROWS_AS(wc_error_curve(0.0, 0.5, 3, 1), std::invalid_argument);
}

TEST_CASE("diamond distance between identity and depolarizing") {
  // Closed form: half diamond distance = p (d^2-1)/d^2.
  for (double p : {0.2, 0.4, 0.8}) {
    const DiamondResult r =
        diamond_distance(choi_identity(2), choi_depolarizing(2, p));
    CHECK(r.value == doctest::Approx(p * 0.75).epsilon(1e-5));
    CHECK(std::abs(r.residual_psd) <= 1e-6);
    CHECK(std::abs(r.residual_gap) <= 1e-6);
    CHECK(std::abs(r.residual_marginal) <= 1e-6);
  }
  const DiamondResult r3 =
      diamond_distance(choi_identity(3), choi_depolarizing(3, 0.3));
  CHECK(r3.value == doctest::Approx(0.3 * 8.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("diamond distance of a channel to itself is zero") {
  const ChoiOperator n = random_channel(2, 2, 123);
  const DiamondResult r = diamond_distance(n, n);
  CHECK(r.value == 0.0);
  CHECK(r.bisections == 0);
}

TEST_CASE("diamond distance is sandwiched by the Choi trace norm") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChoiOperator a = random_channel(2, 2, 300 + seed);
    const ChoiOperator b = random_channel(2, 2, 400 + seed);
    const double half_j = 0.5 * trace_norm(a.matrix - b.matrix);
    const DiamondResult r = diamond_distance(a, b);
    CHECK(r.value >= half_j / 2.0 - 1e-6);
    CHECK(r.value <= half_j + 1e-6);
    CHECK(r.residual_psd >= -1e-6);
    CHECK(r.residual_gap >= -1e-6);
    CHECK(r.residual_marginal <= 1e-6);
  }
}

TEST_CASE("diamond distance rejects mismatched or oversized inputs") {
  CHECK_THROWS_AS(diamond_distance(choi_identity(2), choi_identity(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(diamond_distance(choi_identity(9), choi_depolarizing(9, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("trace-norm bound on the diamond distance") {
  const double bound =
      trace_distance_bound(choi_identity(2), choi_depolarizing(2, 0.4), 2);
  CHECK(bound == doctest::Approx(1.2).epsilon(1e-12));
  CHECK_THROWS_AS(
      trace_distance_bound(choi_identity(2), choi_identity(3), 2),
      std::invalid_argument);
}
