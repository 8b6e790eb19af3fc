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

#include <stdexcept>
#include <vector>

#include "vcomb/channel.hpp"
#include "vcomb/invert.hpp"

namespace vcomb {

/// Residual error f_n(p) of an n-slot inverter built for a family {p_i},
/// evaluated off-family: the composition (inverter after D_p) equals
/// (1 - f_n(p)) id + f_n(p) D, so f_n measures how much depolarization
/// survives. Degree n+1 in p with roots exactly at the family parameters.
struct ErrorPolynomial {
  int slots = 0;
  std::vector<double> params;
  std::vector<double> alphas;

  double operator()(double p) const;
};

ErrorPolynomial build_error_polynomial(const DepolarizingFamily& family, int slots);

struct WorstCase {
  double p_star = 0.0;  // argmax of |f_n| on the interval
  double e_wc = 0.0;    // d * (1/2)||Delta J||_1 at p_star
};

/// Worst case over [lo, hi] of the trace-norm error bound, via dense grid plus
/// local refinement. The Choi gap satisfies (1/2)||J(inv after D_p) - J_id||_1
/// = |f_n(p)| (d^2-1)/d exactly, so the scalar polynomial stands in for the
/// matrix norm.
WorstCase worst_case_bound(const ErrorPolynomial& poly, double lo, double hi, int d);

struct ErrorCurveRow {
  int slots = 0;
  double p_star = 0.0;
  double e_wc = 0.0;
};

/// Worst-case error for n = 1..n_max with the family placed on the uniform
/// grid {lo + (hi-lo) k/n : k = 0..n}. Requires lo < hi inside [0, 1) and
/// n_max <= 30.
std::vector<ErrorCurveRow> wc_error_curve(double lo, double hi, int n_max, int d);

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiamondResult {
  double value = 0.0;        // half diamond-norm distance
  int bisections = 0;
  long iterations = 0;       // projection cycles, all bisection steps
  double residual_psd = 0.0;       // most negative eigenvalue of Z
  double residual_gap = 0.0;       // most negative eigenvalue of Z - Delta
  double residual_marginal = 0.0;  // max eigenvalue of tr_out Z - mu I
};

/// Half diamond-norm distance between two equal-shape channels through the
/// semidefinite program min mu : Z >= 0, Z >= J_a - J_b, tr_out Z <= mu I,
/// solved by bisection on mu with cyclic Dykstra projections deciding
/// feasibility (cap 5e4 cycles, feasibility tolerance 1e-7). Combined Choi
/// dimension is capped at 64. Throws ConvergenceError if no bisection step
/// ever certifies feasibility.
DiamondResult diamond_distance(const ChoiOperator& a, const ChoiOperator& b);

/// d * (1/2)||J_a - J_b||_1: an upper bound on the half diamond-norm distance
/// (and d^2 times a lower bound).
double trace_distance_bound(const ChoiOperator& a, const ChoiOperator& b, int d);

}  // namespace vcomb
