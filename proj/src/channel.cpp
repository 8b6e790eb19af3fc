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

#include "vcomb/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "vcomb/rng.hpp"

namespace vcomb {

SystemLayout ChoiOperator::layout() const {
  return SystemLayout({{"in", dim_in}, {"out", dim_out}});
}

Vector dket(const Matrix& m) {
  const int d_out = static_cast<int>(m.rows());
  const int d_in = static_cast<int>(m.cols());
  Vector v(d_in * d_out);
  for (int i = 0; i < d_in; ++i)
    for (int j = 0; j < d_out; ++j) v(i * d_out + j) = m(j, i);
  return v;
}

namespace {

void check_choi_shape(const ChoiOperator& n, const char* op) {
  if (n.dim_in < 1 || n.dim_out < 1)
    throw std::invalid_argument(std::string(op) + ": non-positive dimension");
  const int d = n.dim_in * n.dim_out;
  if (n.matrix.rows() != d || n.matrix.cols() != d)
    throw std::invalid_argument(std::string(op) + ": Choi matrix shape mismatch");
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  const double scale = std::sqrt(0.5);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(i, j) = scale * Complex(re, im);
    }
  return g;
}

}  // namespace

ChoiOperator choi_identity(int d) {
  if (d < 1) throw std::invalid_argument("choi_identity: dimension must be positive");
  const Vector v = dket(identity_matrix(d));
  ChoiOperator out;
  out.dim_in = d;
  out.dim_out = d;
  out.matrix = v * v.adjoint();
  return out;
}

ChoiOperator choi_depolarizing(int d, double p) {
  if (d < 1) throw std::invalid_argument("choi_depolarizing: dimension must be positive");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("choi_depolarizing: p must lie in [0, 1]");
  ChoiOperator out = choi_identity(d);
  out.matrix = (1.0 - p) * out.matrix +
               (p / d) * Matrix::Identity(d * d, d * d);
  return out;
}

ChoiOperator choi_inverse_depolarizing(int d, double p) {
  if (d < 1)
    throw std::invalid_argument("choi_inverse_depolarizing: dimension must be positive");
  if (p < 0.0 || p >= 1.0)
    throw std::invalid_argument("choi_inverse_depolarizing: p must lie in [0, 1)");
  ChoiOperator out = choi_identity(d);
  out.matrix = out.matrix / (1.0 - p) -
               (p / (1.0 - p) / d) * Matrix::Identity(d * d, d * d);
  return out;
}

ChoiOperator choi_unitary(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 1)
    throw std::invalid_argument("choi_unitary: matrix must be square");
  const int d = static_cast<int>(u.rows());
  if (max_abs(u.adjoint() * u - Matrix::Identity(d, d)) > 1e-9)
    throw std::invalid_argument("choi_unitary: matrix is not unitary");
  const Vector v = dket(u);
  ChoiOperator out;
  out.dim_in = d;
  out.dim_out = d;
  out.matrix = v * v.adjoint();
  return out;
}

Matrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unitary: dimension must be positive");
  Rng rng(seed);
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the QR gauge: absorb the phases of R's diagonal so the distribution
  // is exactly Haar.
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ChoiOperator random_channel(int d_in, int d_out, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1)
    throw std::invalid_argument("random_channel: dimensions must be positive");
  Rng rng(seed);
  const int d = d_in * d_out;
  const Matrix g = ginibre(d, d, rng);
  const Matrix w = g * g.adjoint();

  ChoiOperator out;
  out.dim_in = d_in;
  out.dim_out = d_out;
  const SystemLayout layout({{"in", d_in}, {"out", d_out}});
  const Matrix rho_in = partial_trace(w, layout, {"out"});
  // rho_in^{-1/2}; GG^dag is almost surely full rank.
  const EigResult eig = eig_hermitian(rho_in);
  Matrix inv_sqrt = Matrix::Zero(d_in, d_in);
  for (int k = 0; k < d_in; ++k) {
    const double lambda = eig.values(k);
    if (lambda <= 0.0)
      throw std::runtime_error("random_channel: degenerate input marginal");
    inv_sqrt += (1.0 / std::sqrt(lambda)) * eig.vectors.col(k) *
                eig.vectors.col(k).adjoint();
  }
  const Matrix s = kron(inv_sqrt, identity_matrix(d_out));
  out.matrix = hermitize(s * w * s);
  return out;
}

ChoiOperator link(const ChoiOperator& a, const ChoiOperator& b) {
  check_choi_shape(a, "link");
  check_choi_shape(b, "link");
  if (a.dim_out != b.dim_in)
    throw std::invalid_argument("link: inner dimensions do not match");
  const SystemLayout layout({{"A", a.dim_in}, {"B", a.dim_out}, {"C", b.dim_out}});
  const Matrix left = kron(a.matrix, identity_matrix(b.dim_out));
  const SystemLayout bc({{"B", b.dim_in}, {"C", b.dim_out}});
  const Matrix right =
      kron(identity_matrix(a.dim_in), partial_transpose(b.matrix, bc, "B"));
  ChoiOperator out;
  out.dim_in = a.dim_in;
  out.dim_out = b.dim_out;
  out.matrix = partial_trace(left * right, layout, {"B"});
  return out;
}

Matrix choi_apply(const ChoiOperator& n, const Matrix& rho) {
  check_choi_shape(n, "choi_apply");
  if (rho.rows() != n.dim_in || rho.cols() != n.dim_in)
    throw std::invalid_argument("choi_apply: state dimension mismatch");
  const Matrix left = kron(rho.transpose(), identity_matrix(n.dim_out));
  return partial_trace(left * n.matrix, n.layout(), {"in"});
}

bool is_trace_preserving(const ChoiOperator& n, double tol) {
  check_choi_shape(n, "is_trace_preserving");
  const Matrix marginal = partial_trace(n.matrix, n.layout(), {"out"});
  return max_abs(marginal - identity_matrix(n.dim_in)) <= tol;
}

bool is_completely_positive(const ChoiOperator& n, double tol) {
  check_choi_shape(n, "is_completely_positive");
  if (!is_hermitian(n.matrix)) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(n.matrix),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

//------------------------------------------------------------------------
// HermitianBasis
//------------------------------------------------------------------------

HermitianBasis::HermitianBasis(int d) : d_(d) {
  if (d < 1) throw std::invalid_argument("HermitianBasis: dimension must be positive");
  const double inv_sqrt2 = std::sqrt(0.5);
  ops_.reserve(d * d);
  ops_.push_back(identity_matrix(d) / std::sqrt(static_cast<double>(d)));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      ops_.push_back(sym);
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Complex(0.0, -inv_sqrt2);
      asym(k, j) = Complex(0.0, inv_sqrt2);
      ops_.push_back(asym);
    }
  for (int l = 1; l < d; ++l) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    Matrix diag = Matrix::Zero(d, d);
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    ops_.push_back(diag);
  }
}

RealVector HermitianBasis::expand(const Matrix& m) const {
  if (m.rows() != d_ || m.cols() != d_)
    throw std::invalid_argument("HermitianBasis::expand: dimension mismatch");
  RealVector out(size());
  for (int j = 0; j < size(); ++j)
    out(j) = (ops_[j] * m).trace().real();
  return out;
}

//------------------------------------------------------------------------
// transfer matrices
//------------------------------------------------------------------------

TransferMatrix to_transfer(const ChoiOperator& n, const HermitianBasis& basis) {
  check_choi_shape(n, "to_transfer");
  if (n.dim_in != n.dim_out || n.dim_in != basis.dim())
    throw std::invalid_argument("to_transfer: requires equal dims matching the basis");
  const int b = basis.size();
  TransferMatrix out;
  out.dim = basis.dim();
  out.entries.resize(b, b);
  for (int j = 0; j < b; ++j) {
    const Matrix sj_t = basis.op(j).transpose();
    for (int k = 0; k < b; ++k) {
      // tr(AB) as an entrywise sum; the full product is never needed.
      const Matrix probe = kron(sj_t, basis.op(k));
      const Complex t = n.matrix.cwiseProduct(probe.transpose()).sum();
      out.entries(j, k) = t.real();
    }
  }
  return out;
}

ChoiOperator from_transfer(const TransferMatrix& m, const HermitianBasis& basis) {
  if (m.dim != basis.dim())
    throw std::invalid_argument("from_transfer: basis dimension mismatch");
  const int b = basis.size();
  if (m.entries.rows() != b || m.entries.cols() != b)
    throw std::invalid_argument("from_transfer: entry matrix must be d^2 x d^2");
  const int d = basis.dim();
  ChoiOperator out;
  out.dim_in = d;
  out.dim_out = d;
  out.matrix = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < b; ++j) {
    const Matrix sj_t = basis.op(j).transpose();
    for (int k = 0; k < b; ++k)
      if (m.entries(j, k) != 0.0)
        out.matrix += m.entries(j, k) * kron(sj_t, basis.op(k));
  }
  return out;
}

double transfer_condition(const ChoiOperator& n) {
  const HermitianBasis basis(n.dim_in);
  const TransferMatrix t = to_transfer(n, basis);
  Matrix complex_entries = t.entries.cast<Complex>();
  return condition_number(complex_entries);
}

ChoiOperator inverse_map(const ChoiOperator& n) {
  check_choi_shape(n, "inverse_map");
  if (n.dim_in != n.dim_out)
    throw std::invalid_argument("inverse_map: requires equal input and output dims");
  const HermitianBasis basis(n.dim_in);
  const TransferMatrix t = to_transfer(n, basis);
  Matrix complex_entries = t.entries.cast<Complex>();
  const double cond = condition_number(complex_entries);
  if (!(cond < numerics().cond_limit))
    throw std::runtime_error("inverse_map: transfer matrix numerically singular");
  TransferMatrix inv;
  inv.dim = t.dim;
  inv.entries = t.entries.partialPivLu().inverse();
  return from_transfer(inv, basis);
}

}  // namespace vcomb
