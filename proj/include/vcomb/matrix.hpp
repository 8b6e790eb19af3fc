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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace vcomb {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

/// Shared numeric tolerances. Every approximate comparison in the library
/// routes through one of these knobs so they can be audited in one place.
struct NumericConfig {
  double hermiticity_tol = 1e-10;  // max |M - M^dag| entry for "hermitian"
  double psd_tol = 1e-9;           // min eigenvalue >= -psd_tol for "PSD"
  double residual_tol = 1e-8;      // linear-system / recursion residuals
  double cond_limit = 1e8;         // condition number beyond which maps count as singular
  double node_dup_tol = 1e-12;     // duplicate-node detection in vandermonde solves
  double family_gap = 1e-9;        // minimum pairwise gap between family parameters
};

const NumericConfig& numerics();

//------------------------------------------------------------------------
// elementary constructions
//------------------------------------------------------------------------

Matrix identity_matrix(int d);

/// Kronecker product, row-major index convention (a's index is the slow one).
Matrix kron(const Matrix& a, const Matrix& b);

double max_abs(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = numerics().hermiticity_tol);

/// Hermitian part (m + m^dag)/2.
Matrix hermitize(const Matrix& m);

//------------------------------------------------------------------------
// dense decompositions
//------------------------------------------------------------------------

struct EigResult {
  RealVector values;  // descending
  Matrix vectors;     // columns, same order as values
};

/// Eigendecomposition of a hermitian matrix. Throws std::invalid_argument if
/// the input fails the hermiticity tolerance.
EigResult eig_hermitian(const Matrix& m, double tol = numerics().hermiticity_tol);

/// Schatten-1 norm (sum of singular values). Hermitian inputs take the
/// eigenvalue fast path.
double trace_norm(const Matrix& m);

/// Moore-Penrose pseudoinverse. Singular values below rel_tol * sigma_max are
/// treated as zero.
Matrix pinv(const Matrix& m, double rel_tol = 1e-12);

/// sigma_max / sigma_min; infinity when the smallest singular value vanishes.
double condition_number(const Matrix& m);

/// Numerical rank: number of singular values above rel_tol * sigma_max.
int matrix_rank(const RealMatrix& m, double rel_tol = 1e-10);

//------------------------------------------------------------------------
// structured solves
//------------------------------------------------------------------------

/// Solves sum_k nodes[i]^k x[k] = rhs[i] (polynomial interpolation through the
/// given nodes) with the Bjorck-Pereyra progressive scheme instead of a dense
/// factorization; the divided-difference form stays accurate far beyond the
/// point where the explicit Vandermonde matrix is numerically singular.
/// Throws on duplicate nodes (within node_dup_tol) and on more than 31 nodes.
std::vector<double> solve_vandermonde(const std::vector<double>& nodes,
                                      const std::vector<double>& rhs);

}  // namespace vcomb
