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

#include "vcomb/invert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vcomb {

void validate_family(const DepolarizingFamily& family) {
  if (family.dim < 2)
    throw std::invalid_argument("family: dimension must be at least 2");
  if (family.params.empty())
    throw std::invalid_argument("family: needs at least one parameter");
  for (double p : family.params)
    if (!(p >= 0.0 && p < 1.0))
      throw std::invalid_argument("family: parameters must lie in [0, 1)");
  const double gap = numerics().family_gap;
  for (size_t i = 0; i < family.params.size(); ++i)
    for (size_t j = i + 1; j < family.params.size(); ++j)
      if (std::abs(family.params[i] - family.params[j]) < gap) {
        FeasibilityReport report;
        report.feasible = false;
        throw InfeasibleError("family: parameters must be pairwise distinct", report);
      }
}

namespace {

// Interpolation system of the inverter: row i is
// sum_k (1-p_i)^(n-k) p_i^k alpha_k = 1/(1-p_i).
RealMatrix interpolation_matrix(const std::vector<double>& params, int slots) {
  const int m = static_cast<int>(params.size());
  RealMatrix a(m, slots + 1);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= slots; ++k)
      a(i, k) = std::pow(1.0 - params[i], slots - k) * std::pow(params[i], k);
  return a;
}

RealVector interpolation_rhs(const std::vector<double>& params) {
  RealVector b(params.size());
  for (size_t i = 0; i < params.size(); ++i) b(i) = 1.0 / (1.0 - params[i]);
  return b;
}

// Re-expands sum_k alpha_k q^(n-k) (1-q)^k (with q = 1-p) in the monomial
// basis {1, q, ..., q^n}. The coefficient of q^i is the weight of the i-fold
// application primitive, the constant term the bypass weight: applying the
// channel i times contributes (1-p)^i on the identity component, so matching
// powers of q matches the solved action on every family member.
std::vector<double> monomial_weights(const std::vector<double>& alphas, int slots) {
  std::vector<double> c(slots + 1, 0.0);
  for (int k = 0; k <= slots; ++k) {
    // alpha_k q^(n-k) (1-q)^k: binomial expansion of (1-q)^k.
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      c[slots - k + j] += alphas[k] * binom * ((j % 2 == 0) ? 1.0 : -1.0);
      binom = binom * (k - j) / (j + 1);
    }
  }
  return c;
}

double min_inverse_eigenvalue(int d, double p) {
  // Smallest eigenvalue of the inverse-depolarizing Choi: the flat -p/(1-p)
  // J_D part contributes -p/(d(1-p)) on the complement of the entangled ray.
  if (p == 0.0) return 0.0;
  return -p / (d * (1.0 - p));
}

}  // namespace

FeasibilityReport check_feasibility(const DepolarizingFamily& family, int slots) {
  validate_family(family);
  if (slots < 1 || slots > 30)
    throw std::invalid_argument("check_feasibility: slots must lie in 1..30");

  const int m = static_cast<int>(family.params.size());
  const RealMatrix a = interpolation_matrix(family.params, slots);
  const RealVector b = interpolation_rhs(family.params);

  RealMatrix ab(m, slots + 2);
  ab.block(0, 0, m, slots + 1) = a;
  ab.col(slots + 1) = b;

  FeasibilityReport report;
  report.rank_a = matrix_rank(a);
  report.rank_ab = matrix_rank(ab);

  const Eigen::VectorXd x =
      Eigen::MatrixXd(a).bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  report.residual = (Eigen::MatrixXd(a) * x - b).cwiseAbs().maxCoeff();
  report.feasible = report.residual <= numerics().residual_tol;

  double witness = 0.0;
  for (double p : family.params)
    witness = std::min(witness, min_inverse_eigenvalue(family.dim, p));
  report.negativity_witness = witness;
  return report;
}

std::vector<double> inverter_alphas(const DepolarizingFamily& family, int slots) {
  validate_family(family);
  if (slots < 1 || slots > 30)
    throw std::invalid_argument("inverter_alphas: slots must lie in 1..30");
  if (static_cast<int>(family.params.size()) != slots + 1)
    throw InfeasibleError("inverter_alphas: family size must equal slots + 1",
                          check_feasibility(family, slots));

  // Vandermonde nodes t = p/(1-p); the prefactor diag((1-p)^n) moves to the
  // right-hand side, 1/(1-p) / (1-p)^n = (1-p)^-(n+1).
  std::vector<double> nodes(family.params.size());
  std::vector<double> rhs(family.params.size());
  for (size_t i = 0; i < family.params.size(); ++i) {
    nodes[i] = family.params[i] / (1.0 - family.params[i]);
    rhs[i] = std::pow(1.0 - family.params[i], -(slots + 1));
  }
  const std::vector<double> alphas = solve_vandermonde(nodes, rhs);

  // Guard against conditioning loss: the solution must reproduce the
  // original system.
  const RealMatrix a = interpolation_matrix(family.params, slots);
  const RealVector b = interpolation_rhs(family.params);
  Eigen::VectorXd x(alphas.size());
  for (size_t i = 0; i < alphas.size(); ++i) x(i) = alphas[i];
  const double residual = (Eigen::MatrixXd(a) * x - b).cwiseAbs().maxCoeff();
  if (residual > numerics().residual_tol) {
    FeasibilityReport report = check_feasibility(family, slots);
    throw InfeasibleError("inverter_alphas: interpolation residual too large", report);
  }
  return alphas;
}

DepolarizingInverter build_depolarizing_inverter(const DepolarizingFamily& family,
                                                 int slots) {
  const std::vector<double> alphas = inverter_alphas(family, slots);
  const std::vector<double> weights = monomial_weights(alphas, slots);

  InverterRecipe recipe;
  recipe.slots = slots;
  recipe.dim = family.dim;
  recipe.alphas = alphas;
  recipe.eta_id = weights[0];
  recipe.eta_apply.assign(weights.begin() + 1, weights.end());
  double total = 0.0;
  for (double w : weights) total += w;
  recipe.eta_mix = 1.0 - total;
  recipe.gamma = std::abs(recipe.eta_id) + std::abs(recipe.eta_mix);
  for (double w : recipe.eta_apply) recipe.gamma += std::abs(w);

  std::vector<std::pair<Primitive, double>> terms;
  terms.emplace_back(Primitive::bypass(), recipe.eta_id);
  terms.emplace_back(Primitive::discard_to_mixed(), recipe.eta_mix);
  for (int i = 1; i <= slots; ++i)
    terms.emplace_back(Primitive::apply_times(i), recipe.eta_apply[i - 1]);

  DepolarizingInverter out;
  out.recipe = recipe;
  out.comb = assemble_virtual(terms, slots, family.dim);
  return out;
}

//------------------------------------------------------------------------
// pair inverter
//------------------------------------------------------------------------

namespace {

// Transfer matrix flattened to a row (1 x d^4), entry (j, k) at column j*d^2+k.
RealMatrix transfer_row(const TransferMatrix& t) {
  const int b = static_cast<int>(t.entries.rows());
  RealMatrix row(1, b * b);
  for (int j = 0; j < b; ++j)
    for (int k = 0; k < b; ++k) row(0, j * b + k) = t.entries(j, k);
  return row;
}

RealMatrix real_kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

VirtualComb build_pair_inverter(const ChoiOperator& n0, const ChoiOperator& n1) {
  if (n0.dim_in != n0.dim_out || n1.dim_in != n1.dim_out)
    throw std::invalid_argument("build_pair_inverter: channels must have equal in/out dims");
  if (n0.dim_in != n1.dim_in)
    throw std::invalid_argument("build_pair_inverter: channel dimensions differ");
  const int d = n0.dim_in;
  if (d < 2 || d > 8)
    throw std::invalid_argument("build_pair_inverter: dimension must lie in 2..8");
  if (!is_trace_preserving(n0) || !is_trace_preserving(n1))
    throw std::invalid_argument("build_pair_inverter: channels must be trace preserving");

  const HermitianBasis basis(d);
  const TransferMatrix t0 = to_transfer(n0, basis);
  const TransferMatrix t1 = to_transfer(n1, basis);
  for (const TransferMatrix* t : {&t0, &t1}) {
    const double cond = condition_number(Matrix(t->entries.cast<Complex>()));
    if (!(cond < numerics().cond_limit))
      throw std::runtime_error("build_pair_inverter: channel not invertible");
  }

  const int b = d * d;  // transfer dimension
  // Stacked constraint: for each channel j, (M_j (x) row(M_j)) acting on the
  // unknown d^6 x d^2 block must give the identity. Solve by right inverse.
  RealMatrix k_mat(2 * b, b * b * b);
  k_mat.block(0, 0, b, b * b * b) = real_kron(t0.entries, transfer_row(t0));
  k_mat.block(b, 0, b, b * b * b) = real_kron(t1.entries, transfer_row(t1));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(k_mat),
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::runtime_error(
        "build_pair_inverter: stacked system rank deficient (channels coincide?)");

  RealMatrix rhs(2 * b, b);
  rhs.block(0, 0, b, b) = RealMatrix::Identity(b, b);
  rhs.block(b, 0, b, b) = RealMatrix::Identity(b, b);
  RealMatrix solution = svd.solve(Eigen::MatrixXd(rhs));  // d^6 x d^2

  // Restore strict trace preservation: overwrite the first-column response so
  // the comb maps the identity component to the identity component exactly.
  solution.col(0).setZero();
  solution(0, 0) = 1.0;

  // Reshape rows (k, l, r) and columns s into the comb Choi on (P, I, O, F):
  // C = sum C[klrs] sigma_k^T (x) sigma_l (x) sigma_r^T (x) sigma_s.
  Matrix c_tilde = Matrix::Zero(b * b, b * b);
  for (int k = 0; k < b; ++k) {
    const Matrix sk_t = basis.op(k).transpose();
    for (int l = 0; l < b; ++l) {
      const Matrix skl = kron(sk_t, basis.op(l));
      for (int r = 0; r < b; ++r) {
        const Matrix sr_t = basis.op(r).transpose();
        for (int s = 0; s < b; ++s) {
          const double coeff = solution(k * b * b + l * b + r, s);
          if (coeff != 0.0)
            c_tilde += coeff * kron(skl, kron(sr_t, basis.op(s)));
        }
      }
    }
  }

  // Split into two quantum combs around the discard-to-mixed comb I/d^2:
  // with eta = (1 + ||C||_1) d^2 - 1 the complement comb
  // [(1+eta) I/d^2 - C]/eta is PSD (lambda_max(C) <= ||C||_1) and the marginal
  // recursion is linear, so both pieces are valid combs.
  const double t_norm = trace_norm(c_tilde);
  const double eta = (1.0 + t_norm) * b - 1.0;
  const QuantumComb mixed = build_primitive(Primitive::discard_to_mixed(), 1, d);
  QuantumComb complement;
  complement.layout = mixed.layout;
  complement.slots = 1;
  complement.dim = d;
  complement.choi = ((1.0 + eta) * mixed.choi - c_tilde) / eta;

  VirtualComb vc;
  vc.terms.push_back({1.0 + eta, mixed});
  vc.terms.push_back({-eta, complement});
  return vc;
}

//------------------------------------------------------------------------
// unitary inverter
//------------------------------------------------------------------------

namespace {

// The two isotropic one-slot combs. Both are built from four invariant
// operators on (P, I, O, F): the P<->O and I<->F swaps (partial transposes of
// the wire projectors), their identity counterparts, and the full identity.
QuantumComb isotropic_comb(int d, bool plus_variant) {
  const double c1 = 1.0 / (d * d - 1.0);
  const double c2 = 1.0 / (d * (d * d - 1.0));

  const Matrix swap_po = partial_transpose(
      choi_identity(d).matrix, SystemLayout({{"P", d}, {"O", d}}), "O");
  const Matrix swap_if = partial_transpose(
      choi_identity(d).matrix, SystemLayout({{"I", d}, {"F", d}}), "F");
  const Matrix eye2 = identity_matrix(d * d);

  // Assembled on (P, O, I, F), then reordered.
  Matrix m;
  if (plus_variant) {
    m = c1 * kron(swap_po, swap_if) - c2 * kron(eye2, swap_if) -
        c2 * kron(swap_po, eye2) + c1 * kron(eye2, eye2);
  } else {
    m = -c1 * kron(swap_po, swap_if) - c2 * kron(eye2, swap_if) +
        c2 * kron(swap_po, eye2) + c1 * kron(eye2, eye2);
  }

  const SystemLayout build_layout(
      {{"P", d}, {"O1", d}, {"I1", d}, {"F", d}});
  QuantumComb comb;
  comb.slots = 1;
  comb.dim = d;
  comb.layout = comb_layout(1, d);
  comb.choi = permute_systems(m, build_layout, {"P", "I1", "O1", "F"});
  return comb;
}

}  // namespace

VirtualComb build_unitary_inverter(int d) {
  if (d < 2 || d > 8)
    throw std::invalid_argument("build_unitary_inverter: dimension must lie in 2..8");
  VirtualComb vc;
  vc.terms.push_back({d * d / 2.0, isotropic_comb(d, true)});
  vc.terms.push_back({-(d * d - 2.0) / 2.0, isotropic_comb(d, false)});
  return vc;
}

double overhead_from_fidelity(int d, int slots, double f_opt) {
  if (d < 2) throw std::invalid_argument("overhead_from_fidelity: dimension too small");
  if (slots < 1) throw std::invalid_argument("overhead_from_fidelity: slots too small");
  if (!(f_opt > 0.0 && f_opt <= 1.0))
    throw std::invalid_argument("overhead_from_fidelity: fidelity must lie in (0, 1]");
  return 2.0 / f_opt - 1.0;
}

}  // namespace vcomb
