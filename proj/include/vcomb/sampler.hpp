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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcomb/comb.hpp"
#include "vcomb/invert.hpp"

namespace vcomb {

/// One sampled branch of a quasiprobability decomposition. The first three
/// kinds are cheap closed forms; CombContraction covers arbitrary quantum-comb
/// terms (used by the unitary inverter).
struct PrimitiveOp {
  enum class Kind { Bypass, DiscardToMixed, ApplyTimes, CombContraction };
  Kind kind = Kind::Bypass;
  int times = 0;                     // ApplyTimes only
  std::optional<QuantumComb> comb;   // CombContraction only

  std::string name() const;  // stable key used in term counts
};

struct QuasiTerm {
  double eta = 0.0;
  PrimitiveOp op;
};

struct QuasiDecomposition {
  std::vector<QuasiTerm> terms;
  double gamma() const;  // sum |eta|
};

/// Hoeffding plan: S = ceil(2 gamma^2 ln(2/delta) / epsilon^2) samples bound
/// the estimator error by epsilon with probability at least 1 - delta.
struct SamplingPlan {
  double epsilon = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

SamplingPlan plan_samples(double epsilon, double delta, double gamma,
                          std::uint64_t seed);

/// Recipe coefficients as sampleable terms; exact-zero coefficients are
/// dropped.
QuasiDecomposition decompose_recipe(const InverterRecipe& recipe);

/// The two-comb unitary inverter as sampleable terms (gamma = d^2 - 1).
QuasiDecomposition decompose_unitary_inverter(int d);

struct ProtocolResult {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> term_counts;
  double variance = 0.0;  // empirical variance of the per-sample estimates
};

/// Monte-Carlo estimate of tr[O * (virtual comb applied to channel)(rho)]:
/// draw a term with probability |eta|/gamma, run it on channel(rho) exactly,
/// Born-sample an eigenvalue lambda of O, and average
/// X = gamma * sign(eta) * lambda. Requires rho a density matrix, O hermitian
/// with ||O||_inf <= 1, and a trace-preserving channel. Per-sample randomness
/// derives from (seed, sample index) only, so shards reproduce the serial
/// stream.
ProtocolResult run_protocol(const ChoiOperator& channel, const Matrix& rho,
                            const Matrix& observable,
                            const QuasiDecomposition& decomp,
                            const SamplingPlan& plan);

}  // namespace vcomb
