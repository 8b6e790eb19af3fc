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

#include <cstdint>

#include "vcomb/layout.hpp"
#include "vcomb/matrix.hpp"

namespace vcomb {

/// Choi operator of a linear map, stored on (input x output) with the
/// unnormalized convention: the identity channel has J = |I>><<I| of trace d.
/// Applying the map reads J through choi_apply below.
struct ChoiOperator {
  Matrix matrix;    // (dim_in * dim_out) square
  int dim_in = 0;
  int dim_out = 0;

  SystemLayout layout() const;  // {"in", "out"}
};

/// Column vector |M>> = sum_i |i> (x) M|i> for a dim_out x dim_in matrix M.
Vector dket(const Matrix& m);

//------------------------------------------------------------------------
// constructors
//------------------------------------------------------------------------

ChoiOperator choi_identity(int d);

/// (1-p) |I>><<I| + p (I (x) I)/d: keep with probability 1-p, replace with the
/// maximally mixed state with probability p. Requires 0 <= p <= 1.
ChoiOperator choi_depolarizing(int d, double p);

/// Choi of the (non-CP for p > 0) inverse of the depolarizing channel:
/// |I>><<I|/(1-p) - p/(1-p) (I (x) I)/d. Requires p < 1.
ChoiOperator choi_inverse_depolarizing(int d, double p);

/// |U>><<U| for a unitary U; throws if ||U^dag U - I||_max > 1e-9.
ChoiOperator choi_unitary(const Matrix& u);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the R-diagonal
/// phase correction that removes the QR gauge freedom.
Matrix random_unitary(int d, std::uint64_t seed);

/// Random full-rank channel: G G^dag for Ginibre G, then the symmetric
/// normalization (tr_out)^{-1/2} sandwich on the input factor, which makes the
/// map exactly trace preserving.
ChoiOperator random_channel(int d_in, int d_out, std::uint64_t seed);

//------------------------------------------------------------------------
// composition and action
//------------------------------------------------------------------------

/// Choi of b after a (link product over a's output = b's input).
ChoiOperator link(const ChoiOperator& a, const ChoiOperator& b);

/// Output state tr_in[(rho^T (x) I) J].
Matrix choi_apply(const ChoiOperator& n, const Matrix& rho);

bool is_trace_preserving(const ChoiOperator& n, double tol = numerics().residual_tol);
bool is_completely_positive(const ChoiOperator& n, double tol = numerics().psd_tol);

//------------------------------------------------------------------------
// hermitian operator basis and transfer matrices
//------------------------------------------------------------------------

/// Orthonormal hermitian basis of d x d operators: sigma_0 = I/sqrt(d) plus
/// the rescaled generalized Gell-Mann set, tr[sigma_j sigma_k] = delta_jk.
class HermitianBasis {
 public:
  explicit HermitianBasis(int d);

  int dim() const { return d_; }
  int size() const { return d_ * d_; }
  const Matrix& op(int j) const { return ops_.at(j); }

  /// Real coefficients e_j = tr[m sigma_j] of a hermitian matrix.
  RealVector expand(const Matrix& m) const;

 private:
  int d_ = 0;
  std::vector<Matrix> ops_;
};

/// Real d^2 x d^2 matrix of a hermitian-preserving map in the sigma basis,
/// row-vector action: the coefficient row of the output state is the
/// coefficient row of the input times this matrix. Composition therefore
/// multiplies in application order, M(b after a) = M(a) * M(b), and the map is
/// trace preserving exactly when the first column is (1, 0, ..., 0).
struct TransferMatrix {
  RealMatrix entries;  // (j, k): input component j, output component k
  int dim = 0;         // underlying Hilbert dimension d
};

TransferMatrix to_transfer(const ChoiOperator& n, const HermitianBasis& basis);
ChoiOperator from_transfer(const TransferMatrix& m, const HermitianBasis& basis);

/// Condition number of the transfer matrix (invertibility measure).
double transfer_condition(const ChoiOperator& n);

/// Choi of the (generally non-CP) linear inverse map. Throws
/// std::runtime_error when the transfer condition number exceeds cond_limit.
ChoiOperator inverse_map(const ChoiOperator& n);

}  // namespace vcomb
