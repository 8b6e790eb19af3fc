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

#include "vcomb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vcomb {

double ErrorPolynomial::operator()(double p) const {
  // f(p) = 1 - (1-p) sum_k (1-p)^(n-k) p^k alpha_k. The expanded form loses
  // everything to cancellation once |f| drops below ~1e-15 (which the larger
  // grids reach quickly), so evaluate the factored equivalent instead: f has
  // degree n+1 with roots exactly at the grid parameters, and f(1) = 1
  // identically because every interpolation term carries a factor of 1-p.
  // Those two facts pin down f(p) = prod_i (p - p_i)/(1 - p_i), which needs
  // no solved coefficients and is accurate to a few ulps at any magnitude.
  if (static_cast<int>(params.size()) == slots + 1) {
    double value = 1.0;
    for (double root : params) value *= (p - root) / (1.0 - root);
    return value;
  }
  const double q = 1.0 - p;
  double sum = 0.0;
  double pk = 1.0;  // p^k
  for (int k = 0; k <= slots; ++k) {
    sum += std::pow(q, slots - k) * pk * alphas[k];
    pk *= p;
  }
  return 1.0 - q * sum;
}

ErrorPolynomial build_error_polynomial(const DepolarizingFamily& family, int slots) {
  // Only the interpolation coefficients are needed; skipping the comb assembly
  // keeps large slot counts (beyond the dense comb cap) available here.
  ErrorPolynomial poly;
  poly.slots = slots;
  poly.params = family.params;
  poly.alphas = inverter_alphas(family, slots);
  return poly;
}

WorstCase worst_case_bound(const ErrorPolynomial& poly, double lo, double hi, int d) {
  if (!(lo < hi) || lo < 0.0 || hi >= 1.0)
    throw std::invalid_argument("worst_case_bound: need 0 <= lo < hi < 1");
  if (d < 2) throw std::invalid_argument("worst_case_bound: dimension too small");

  // Dense scan, then golden-section polish inside the best bracket. Symmetric
  // grids produce mirror-image maxima of exactly equal magnitude; the relative
  // guard makes the leftmost one win such ties deterministically instead of
  // leaving the choice to last-ulp rounding.
  const int grid = 10000;
  double best_p = lo, best_f = std::abs(poly(lo));
  for (int i = 1; i <= grid; ++i) {
    const double p = lo + (hi - lo) * i / grid;
    const double f = std::abs(poly(p));
    if (f > best_f * (1.0 + 1e-12)) {
      best_f = f;
      best_p = p;
    }
  }
  const double step = (hi - lo) / grid;
  double a = std::max(lo, best_p - step);
  double b = std::min(hi, best_p + step);
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = std::abs(poly(x1));
  double f2 = std::abs(poly(x2));
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = std::abs(poly(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = std::abs(poly(x1));
    }
  }
  const double p_star = 0.5 * (a + b);
  const double f_star = std::max({std::abs(poly(p_star)), best_f});

  // (1/2)||Delta J||_1 = |f| (d^2-1)/d; the diamond bound multiplies by d.
  WorstCase out;
  out.p_star = f_star > best_f ? p_star : best_p;
  out.e_wc = std::abs(poly(out.p_star)) * (d * d - 1.0);
  return out;
}

std::vector<ErrorCurveRow> wc_error_curve(double lo, double hi, int n_max, int d) {
  if (!(lo < hi))
    throw std::invalid_argument("wc_error_curve: interval must satisfy lo < hi");
  if (lo < 0.0 || hi >= 1.0)
    throw std::invalid_argument("wc_error_curve: interval must lie inside [0, 1)");
  if (n_max < 1 || n_max > 30)
    throw std::invalid_argument("wc_error_curve: n_max must lie in 1..30");
  if (d < 2) throw std::invalid_argument("wc_error_curve: dimension too small");

  std::vector<ErrorCurveRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    DepolarizingFamily family;
    family.dim = d;
    for (int k = 0; k <= n; ++k)
      family.params.push_back(lo + (hi - lo) * k / n);
    const ErrorPolynomial poly = build_error_polynomial(family, n);
    const WorstCase wc = worst_case_bound(poly, lo, hi, d);
    rows.push_back({n, wc.p_star, wc.e_wc});
  }
  return rows;
}

//------------------------------------------------------------------------
// diamond-norm program
//------------------------------------------------------------------------

namespace {

// Projection onto the PSD cone.
Matrix psd_part(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(m));
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    if (vals(k) > 0.0)
      out += vals(k) * (Matrix(vecs.col(k)) * vecs.col(k).adjoint());
  return out;
}

double min_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(m),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double max_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(m),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

struct Feasibility {
  bool ok = false;
  long cycles = 0;
  double residual_psd = 0.0;
  double residual_gap = 0.0;
  double residual_marginal = 0.0;
};

constexpr long kCycleCap = 50000;
constexpr double kFeasTol = 1e-7;

// Cyclic Dykstra projection onto the intersection of
//   {Z >= 0}, {Z >= Delta}, {tr_out Z <= mu I}.
// Infeasibility is decided by residual stall (no relative progress over a
// window, which is what disjoint sets produce) or, failing that, the cycle cap.
Feasibility feasible(const Matrix& delta, const SystemLayout& layout, int d_in,
                     int d_out, double mu, Matrix& z) {
  Matrix q0 = Matrix::Zero(delta.rows(), delta.cols());
  Matrix q1 = q0, q2 = q0;
  Feasibility result;
  double best_residual = std::numeric_limits<double>::infinity();
  long since_progress = 0;
  for (long cycle = 0; cycle < kCycleCap; ++cycle) {
    Matrix y = psd_part(z + q0);
    q0 = z + q0 - y;
    z = std::move(y);

    y = delta + psd_part(z + q1 - delta);
    q1 = z + q1 - y;
    z = std::move(y);

    // Project onto tr_out Z <= mu I: subtract the offending marginal part,
    // spread uniformly over the traced factor.
    Matrix with_memory = z + q2;
    const Matrix marginal = partial_trace(with_memory, layout, {"out"});
    const Matrix excess =
        psd_part(marginal - mu * identity_matrix(d_in));
    y = with_memory - kron(excess, identity_matrix(d_out)) / d_out;
    q2 = with_memory - y;
    z = std::move(y);

    result.cycles = cycle + 1;
    result.residual_psd = min_eig(z);
    result.residual_gap = min_eig(z - delta);
    result.residual_marginal =
        max_eig(partial_trace(z, layout, {"out"}) - mu * identity_matrix(d_in));
    if (result.residual_psd >= -kFeasTol && result.residual_gap >= -kFeasTol &&
        result.residual_marginal <= kFeasTol) {
      result.ok = true;
      return result;
    }

    const double residual = std::max(
        {-result.residual_psd, -result.residual_gap, result.residual_marginal});
    if (residual < best_residual * (1.0 - 1e-4)) {
      best_residual = residual;
      since_progress = 0;
    } else if (++since_progress > 400 && cycle > 50) {
      return result;  // stalled: sets are (numerically) disjoint
    }
  }
  return result;
}

}  // namespace

DiamondResult diamond_distance(const ChoiOperator& a, const ChoiOperator& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out)
    throw std::invalid_argument("diamond_distance: channel shapes differ");
  const int d_in = a.dim_in, d_out = a.dim_out;
  if (d_in * d_out > 64)
    throw std::invalid_argument("diamond_distance: dimension cap 64 exceeded");

  const Matrix delta = a.matrix - b.matrix;
  const SystemLayout layout({{"in", d_in}, {"out", d_out}});
  const double half_j = 0.5 * trace_norm(delta);

  DiamondResult result;
  if (half_j <= 1e-14) {
    result.value = 0.0;
    return result;
  }

  // Bracket the optimum: the general lower bound half_j / d_in, and the
  // analytic certificate Z = Delta_+ which is feasible for every
  // mu >= lambda_max(tr_out Delta_+).
  const Matrix delta_plus = psd_part(delta);
  double lo = half_j / d_in;
  double hi = max_eig(partial_trace(delta_plus, layout, {"out"}));
  Matrix z_best = delta_plus;
  Feasibility best;
  best.ok = true;

  const double tol = 1e-6 + 1e-5 * lo;
  constexpr long kIterationBudget = 5000000;
  while (hi - lo > tol) {
    const double mu = 0.5 * (lo + hi);
    Matrix z_try = z_best;
    const Feasibility f = feasible(delta, layout, d_in, d_out, mu, z_try);
    result.iterations += f.cycles;
    ++result.bisections;
    if (f.ok) {
      hi = mu;
      z_best = z_try;
      best = f;
    } else {
      lo = mu;
    }
    if (result.iterations > kIterationBudget)
      throw ConvergenceError("diamond_distance: projection budget exhausted");
  }

  result.value = hi;
  result.residual_psd = best.residual_psd;
  result.residual_gap = best.residual_gap;
  result.residual_marginal = best.residual_marginal;
  return result;
}

double trace_distance_bound(const ChoiOperator& a, const ChoiOperator& b, int d) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out)
    throw std::invalid_argument("trace_distance_bound: channel shapes differ");
  if (d < 1) throw std::invalid_argument("trace_distance_bound: dimension too small");
  return d * 0.5 * trace_norm(a.matrix - b.matrix);
}

}  // namespace vcomb
