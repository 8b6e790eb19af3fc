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
#include "vcomb/comb.hpp"

namespace vcomb {

/// Depolarizing channels D_p for p in params, all of the same dimension.
/// Parameters must lie in [0, 1) and be pairwise distinct (gap >= 1e-9).
struct DepolarizingFamily {
  int dim = 0;
  std::vector<double> params;
};

void validate_family(const DepolarizingFamily& family);

/// Solved inverter for an (n+1)-parameter family on an n-slot comb: the
/// interpolation coefficients alpha, the primitive-comb coefficients they
/// induce, and the sampling overhead gamma = sum |eta|.
struct InverterRecipe {
  int slots = 0;
  int dim = 0;
  std::vector<double> alphas;     // size slots+1
  double eta_id = 0.0;            // Bypass coefficient
  double eta_mix = 0.0;           // DiscardToMixed coefficient
  std::vector<double> eta_apply;  // ApplyTimes(1..slots) coefficients
  double gamma = 0.0;
};

struct FeasibilityReport {
  bool feasible = false;
  int rank_a = 0;            // interpolation matrix
  int rank_ab = 0;           // augmented matrix
  double residual = 0.0;     // least-squares residual, max norm
  double negativity_witness = 0.0;  // min eigenvalue over target inverse Chois
};

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, FeasibilityReport report)
      : std::runtime_error(what), report(std::move(report)) {}
  FeasibilityReport report;
};

struct DepolarizingInverter {
  InverterRecipe recipe;
  VirtualComb comb;
};

/// Interpolation coefficients alpha for an (n+1)-member family on n slots:
/// the linear-solve core of build_depolarizing_inverter, without assembling
/// any comb (so it stays cheap at large n). Throws InfeasibleError when the
/// family size is not slots+1 or the solve loses too much precision.
std::vector<double> inverter_alphas(const DepolarizingFamily& family, int slots);

/// Exact n-slot inverter for an (n+1)-member depolarizing family: solves the
/// interpolation system for alpha, re-expands into primitive-comb
/// coefficients, and assembles the affine combination. Throws InfeasibleError
/// when the family size is not slots+1 or the parameters are degenerate.
DepolarizingInverter build_depolarizing_inverter(const DepolarizingFamily& family,
                                                 int slots);

/// Rank/residual diagnosis of the interpolation system for an arbitrary
/// family size m on n slots: solvable iff m <= n+1 (m < n+1 leaves slack,
/// m = n+1 is unique, m >= n+2 is rank-deficient in exactly the augmented
/// column). Also reports the positivity witness showing no single physical
/// comb can do the job.
FeasibilityReport check_feasibility(const DepolarizingFamily& family, int slots);

/// One-slot virtual comb reversing both channels of a pair: right-inverts the
/// stacked transfer system, restores trace preservation on the free component,
/// and splits the result into two quantum combs. Channels must be equal-dim
/// (d <= 8), invertible, and distinct.
VirtualComb build_pair_inverter(const ChoiOperator& n0, const ChoiOperator& n1);

/// One-slot virtual comb reversing every unitary channel of dimension d,
/// built from two isotropic quantum combs with weights d^2/2 and -(d^2-2)/2;
/// gamma = d^2 - 1.
VirtualComb build_unitary_inverter(int d);

/// Sampling overhead nu = 2/f - 1 attainable at optimal-fidelity f of the
/// corresponding probabilistic inversion protocol.
double overhead_from_fidelity(int d, int slots, double f_opt);

}  // namespace vcomb
