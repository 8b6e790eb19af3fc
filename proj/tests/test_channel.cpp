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

#include "vcomb/channel.hpp"

using namespace vcomb;

namespace {

Matrix pauli_z() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

Matrix e00(int d) {
  Matrix m = Matrix::Zero(d, d);
  m(0, 0) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("dket packs column-major action into the in-out index") {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  const Vector v = dket(m);
  REQUIRE(v.size() == 4);
  // component (i * d_out + j) = M(j, i)
  CHECK(v(0) == Complex(1, 0));
  CHECK(v(1) == Complex(3, 0));
  CHECK(v(2) == Complex(2, 0));
  CHECK(v(3) == Complex(4, 0));
}

TEST_CASE("identity Choi is the unnormalized maximally entangled projector") {
  const ChoiOperator id = choi_identity(2);
  CHECK(id.matrix.trace() == Complex(2, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool on = (i == 0 || i == 3) && (j == 0 || j == 3);
      CHECK(id.matrix(i, j) == Complex(on ? 1 : 0, 0));
    }
  Matrix rho(2, 2);
  rho << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  CHECK(max_abs(choi_apply(id, rho) - rho) < 1e-14);
}

TEST_CASE("depolarizing Choi spectrum, action, and composition") {
  const ChoiOperator dep = choi_depolarizing(2, 0.5);
  CHECK(is_trace_preserving(dep));
  CHECK(is_completely_positive(dep));
  const EigResult eig = eig_hermitian(dep.matrix);
  CHECK(eig.values(0) == doctest::Approx(1.25));
  CHECK(eig.values(1) == doctest::Approx(0.25));
  CHECK(eig.values(2) == doctest::Approx(0.25));
  CHECK(eig.values(3) == doctest::Approx(0.25));

  const Matrix out = choi_apply(dep, e00(2));
  Matrix want(2, 2);
  want << 0.75, 0, 0, 0.25;  // (1-p)|0><0| + p I/2
  CHECK(max_abs(out - want) < 1e-14);

  // D_q after D_p is D_{1-(1-p)(1-q)}.
  const ChoiOperator twice = link(choi_depolarizing(2, 0.5), choi_depolarizing(2, 0.5));
  CHECK(max_abs(twice.matrix - choi_depolarizing(2, 0.75).matrix) < 1e-12);

  // Linking with the identity is a no-op on either side.
  const ChoiOperator left = link(choi_identity(2), dep);
  const ChoiOperator right = link(dep, choi_identity(2));
  CHECK(max_abs(left.matrix - dep.matrix) < 1e-12);
  CHECK(max_abs(right.matrix - dep.matrix) < 1e-12);
}

TEST_CASE("inverse depolarizing Choi inverts through the link product") {
  const ChoiOperator inv = choi_inverse_depolarizing(2, 0.5);
  const EigResult eig = eig_hermitian(inv.matrix);
  CHECK(eig.values(0) == doctest::Approx(3.5));
  CHECK(eig.values(1) == doctest::Approx(-0.5));
  CHECK(eig.values(3) == doctest::Approx(-0.5));
  CHECK(is_trace_preserving(inv));
  CHECK_FALSE(is_completely_positive(inv));

  const ChoiOperator dep = choi_depolarizing(2, 0.5);
  CHECK(max_abs(link(dep, inv).matrix - choi_identity(2).matrix) < 1e-12);
  CHECK(max_abs(link(inv, dep).matrix - choi_identity(2).matrix) < 1e-12);

  CHECK_THROWS_AS(choi_inverse_depolarizing(2, 1.0), std::invalid_argument);
}

TEST_CASE("unitary Choi conjugates states") {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const ChoiOperator ux = choi_unitary(x);
  const Matrix out = choi_apply(ux, e00(2));
  Matrix want = Matrix::Zero(2, 2);
  want(1, 1) = 1.0;
  CHECK(max_abs(out - want) < 1e-14);

  Matrix not_unitary(2, 2);
  not_unitary << 1, 0, 0, 2;
  CHECK_THROWS_AS(choi_unitary(not_unitary), std::invalid_argument);
}

TEST_CASE("random unitaries are unitary and seed-stable") {
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const Matrix u = random_unitary(3, seed);
    CHECK(max_abs(u.adjoint() * u - identity_matrix(3)) < 1e-12);
  }
  CHECK(max_abs(random_unitary(2, 5) - random_unitary(2, 5)) == 0.0);
  CHECK(max_abs(random_unitary(2, 5) - random_unitary(2, 6)) > 1e-3);
}

TEST_CASE("random channels are CPTP and seed-stable") {
  for (std::uint64_t seed : {1ull, 7ull}) {
    const ChoiOperator n = random_channel(2, 2, seed);
    CHECK(is_trace_preserving(n));
    CHECK(is_completely_positive(n));
  }
  const ChoiOperator rect = random_channel(2, 3, 4);
  CHECK(rect.dim_in == 2);
  CHECK(rect.dim_out == 3);
  CHECK(is_trace_preserving(rect));
  CHECK(is_completely_positive(rect));
  CHECK(max_abs(random_channel(2, 2, 9).matrix - random_channel(2, 2, 9).matrix) ==
        0.0);
}

TEST_CASE("hermitian basis is orthonormal") {
  for (int d : {2, 3}) {
    const HermitianBasis basis(d);
    REQUIRE(basis.size() == d * d);
    for (int j = 0; j < basis.size(); ++j) {
      CHECK(is_hermitian(basis.op(j)));
      for (int k = 0; k < basis.size(); ++k) {
        const Complex overlap = (basis.op(j) * basis.op(k)).trace();
        CHECK(std::abs(overlap.imag()) < 1e-12);
        CHECK(overlap.real() == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10));
      }
    }
    // expand() recovers components of a random hermitian matrix.
    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) h(i, j) = Complex(i + 2 * j, i - j);
    h = hermitize(h);
    const RealVector coeff = basis.expand(h);
    Matrix rebuilt = Matrix::Zero(d, d);
    for (int j = 0; j < basis.size(); ++j) rebuilt += coeff(j) * basis.op(j);
    CHECK(max_abs(rebuilt - h) < 1e-12);
  }
}

TEST_CASE("transfer matrix of the depolarizing channel is diagonal") {
  const HermitianBasis basis(2);
  const TransferMatrix t = to_transfer(choi_depolarizing(2, 0.3), basis);
  RealMatrix want = RealMatrix::Zero(4, 4);
  want(0, 0) = 1.0;
  want(1, 1) = want(2, 2) = want(3, 3) = 0.7;
  CHECK((t.entries - want).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(transfer_condition(choi_depolarizing(2, 0.5)) == doctest::Approx(2.0));
}

TEST_CASE("transfer representation round-trips and composes in application order") {
  const HermitianBasis basis(2);
  const ChoiOperator a = random_channel(2, 2, 21);
  const ChoiOperator b = random_channel(2, 2, 22);

  CHECK(max_abs(from_transfer(to_transfer(a, basis), basis).matrix - a.matrix) <
        1e-10);

  const TransferMatrix ta = to_transfer(a, basis);
  const TransferMatrix tb = to_transfer(b, basis);
  const TransferMatrix tab = to_transfer(link(a, b), basis);
  CHECK((RealMatrix(ta.entries * tb.entries) - tab.entries).cwiseAbs().maxCoeff() <
        1e-10);

  // Trace preservation is exactly "first transfer column is e_0".
  RealVector first = ta.entries.col(0);
  CHECK(first(0) == doctest::Approx(1.0).epsilon(1e-10));
  for (int j = 1; j < 4; ++j) CHECK(std::abs(first(j)) < 1e-10);
}

TEST_CASE("inverse_map inverts invertible channels and rejects singular ones") {
  const ChoiOperator dep = choi_depolarizing(2, 0.5);
  const ChoiOperator inv = inverse_map(dep);
  CHECK(max_abs(inv.matrix - choi_inverse_depolarizing(2, 0.5).matrix) < 1e-10);
  CHECK(max_abs(link(dep, inv).matrix - choi_identity(2).matrix) < 1e-10);

  // The fully depolarizing channel kills the Bloch ball; no linear inverse.
  CHECK_THROWS_AS(inverse_map(choi_depolarizing(2, 1.0)), std::runtime_error);
}
