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

#include <utility>
#include <vector>

#include "vcomb/channel.hpp"
#include "vcomb/layout.hpp"
#include "vcomb/matrix.hpp"

namespace vcomb {

/// Label order P, I1, O1, ..., In, On, F with every factor of dimension d.
/// P is the comb's global input, F its global output; slot k feeds the
/// inserted channel through Ik and receives its output on Ok.
SystemLayout comb_layout(int slots, int d);

/// Deterministic n-slot network, stored as its Choi operator on comb_layout.
struct QuantumComb {
  Matrix choi;
  SystemLayout layout;
  int slots = 0;
  int dim = 0;
};

/// Affine combination sum_i eta_i C_i of quantum combs with sum_i eta_i = 1.
/// The combination is generally not PSD; it becomes operational through
/// quasiprobability sampling rather than as a single physical circuit.
struct VirtualTerm {
  double eta = 0.0;
  QuantumComb comb;
};

struct VirtualComb {
  std::vector<VirtualTerm> terms;

  int slots() const;
  int dim() const;
  /// sum_i |eta_i|: the sampling overhead of the combination.
  double gamma() const;
  /// sum_i eta_i C_i.
  Matrix combined_choi() const;
  const SystemLayout& layout() const;
};

//------------------------------------------------------------------------
// validation
//------------------------------------------------------------------------

/// Per-level residuals of the causality recursion. Level i covers the marginal
/// condition that removes slot i's pair (level 0 is the overall normalization
/// C^(0) = 1); a deterministic network must satisfy every level on top of
/// positivity, and its trace is then d^(slots+1).
struct CombReport {
  bool pass = false;
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  std::vector<double> recursion_residuals;  // levels 0 .. slots+1
  double trace_error = 0.0;
};

CombReport validate_comb(const Matrix& choi, const SystemLayout& layout);

struct VirtualReport {
  bool pass = false;
  double affine_error = 0.0;                // |sum eta - 1|
  std::vector<double> recursion_residuals;  // of the combined Choi
  std::vector<CombReport> term_reports;
};

/// Checks sum eta = 1, every term a valid quantum comb, and the combined Choi
/// against the same marginal recursion with positivity dropped.
VirtualReport validate_virtual(const VirtualComb& vc);

//------------------------------------------------------------------------
// primitives and assembly
//------------------------------------------------------------------------

struct Primitive {
  enum class Kind { Bypass, DiscardToMixed, ApplyTimes };
  Kind kind = Kind::Bypass;
  int times = 0;  // ApplyTimes only, 1 <= times <= slots

  static Primitive bypass() { return {Kind::Bypass, 0}; }
  static Primitive discard_to_mixed() { return {Kind::DiscardToMixed, 0}; }
  static Primitive apply_times(int i) { return {Kind::ApplyTimes, i}; }
};

/// Choi operators of the three deterministic building blocks:
///  - Bypass: wire P straight to F, feed every slot the maximally mixed state;
///  - DiscardToMixed: discard P, output the maximally mixed state on F;
///  - ApplyTimes(i): chain slots 1..i between P and F (the inserted channel is
///    applied i times), idle the rest.
QuantumComb build_primitive(const Primitive& p, int slots, int d);

/// sum of (coefficient, primitive) terms; coefficients must sum to 1 within
/// 1e-10.
VirtualComb assemble_virtual(const std::vector<std::pair<Primitive, double>>& terms,
                             int slots, int d);

//------------------------------------------------------------------------
// contraction
//------------------------------------------------------------------------

/// Insert the same channel into every slot and return the resulting P -> F
/// map. Dense contraction is capped at total layout dimension 4096 (n <= 4 at
/// d = 2, n <= 2 at d = 3).
ChoiOperator contract(const QuantumComb& comb, const ChoiOperator& channel);
ChoiOperator contract(const VirtualComb& vc, const ChoiOperator& channel);

}  // namespace vcomb
