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

#include "vcomb/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace vcomb {

const NumericConfig& numerics() {
  static const NumericConfig config;
  return config;
}

Matrix identity_matrix(int d) {
  if (d < 1) throw std::invalid_argument("identity_matrix: dimension must be positive");
  return Matrix::Identity(d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols();
  const Eigen::Index br = b.rows(), bc = b.cols();
  Matrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint().eval()) <= tol;
}

Matrix hermitize(const Matrix& m) {
  return 0.5 * (m + m.adjoint().eval());
}

EigResult eig_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("eig_hermitian: matrix must be square");
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("eig_hermitian: matrix is not hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(m));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed");
  const Eigen::Index n = m.rows();
  EigResult out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = Matrix(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  return out;
}

double trace_norm(const Matrix& m) {
  if (m.rows() == m.cols() && is_hermitian(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(m),
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

Matrix pinv(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  const double cut = rel_tol * sv(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

int matrix_rank(const RealMatrix& m, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

std::vector<double> solve_vandermonde(const std::vector<double>& nodes,
                                      const std::vector<double>& rhs) {
  const int m = static_cast<int>(nodes.size());
  if (m == 0) throw std::invalid_argument("solve_vandermonde: empty node list");
  if (rhs.size() != nodes.size())
    throw std::invalid_argument("solve_vandermonde: nodes and rhs sizes differ");
  if (m > 31)
    throw std::invalid_argument("solve_vandermonde: more than 31 nodes unsupported");
  const double dup = numerics().node_dup_tol;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= dup)
        throw std::invalid_argument("solve_vandermonde: duplicate nodes");
  if (m > 13)
    std::fprintf(stderr,
                 "solve_vandermonde: warning: %d nodes, coefficients may be ill conditioned\n",
                 m);

  // Divided differences (Newton form), then conversion to monomial
  // coefficients; two triangular sweeps, no matrix ever formed.
  std::vector<double> c = rhs;
  const int n = m - 1;
  for (int k = 0; k < n; ++k)
    for (int j = n; j >= k + 1; --j)
      c[j] = (c[j] - c[j - 1]) / (nodes[j] - nodes[j - 1 - k]);
  for (int k = n - 1; k >= 0; --k)
    for (int j = k; j <= n - 1; ++j)
      c[j] -= nodes[k] * c[j + 1];
  return c;
}

}  // namespace vcomb
