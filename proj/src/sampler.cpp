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

#include "vcomb/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "vcomb/rng.hpp"

namespace vcomb {

std::string PrimitiveOp::name() const {
  switch (kind) {
    case Kind::Bypass:
      return "bypass";
    case Kind::DiscardToMixed:
      return "mix";
    case Kind::ApplyTimes:
      return "apply" + std::to_string(times);
    case Kind::CombContraction:
      return "comb" + std::to_string(times);
  }
  return "unknown";
}

double QuasiDecomposition::gamma() const {
  double g = 0.0;
  for (const auto& term : terms) g += std::abs(term.eta);
  return g;
}

SamplingPlan plan_samples(double epsilon, double delta, double gamma,
                          std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("plan_samples: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("plan_samples: delta must lie in (0, 1)");
  if (!(gamma >= 1.0))
    throw std::invalid_argument("plan_samples: gamma must be at least 1");
  SamplingPlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.gamma = gamma;
  plan.seed = seed;
  // Hoeffding for per-sample range [-gamma, gamma].
  plan.samples = static_cast<std::uint64_t>(
      std::ceil(2.0 * gamma * gamma * std::log(2.0 / delta) / (epsilon * epsilon)));
  return plan;
}

QuasiDecomposition decompose_recipe(const InverterRecipe& recipe) {
  QuasiDecomposition decomp;
  auto push = [&](double eta, PrimitiveOp op) {
    if (eta != 0.0) decomp.terms.push_back({eta, std::move(op)});
  };
  push(recipe.eta_id, {PrimitiveOp::Kind::Bypass, 0, std::nullopt});
  push(recipe.eta_mix, {PrimitiveOp::Kind::DiscardToMixed, 0, std::nullopt});
  for (int i = 1; i <= recipe.slots; ++i)
    push(recipe.eta_apply[i - 1], {PrimitiveOp::Kind::ApplyTimes, i, std::nullopt});
  if (decomp.terms.empty())
    throw std::invalid_argument("decompose_recipe: all coefficients vanish");
  return decomp;
}

QuasiDecomposition decompose_unitary_inverter(int d) {
  const VirtualComb vc = build_unitary_inverter(d);
  QuasiDecomposition decomp;
  for (size_t i = 0; i < vc.terms.size(); ++i) {
    PrimitiveOp op{PrimitiveOp::Kind::CombContraction, static_cast<int>(i),
                   vc.terms[i].comb};
    decomp.terms.push_back({vc.terms[i].eta, std::move(op)});
  }
  return decomp;
}

ProtocolResult run_protocol(const ChoiOperator& channel, const Matrix& rho,
                            const Matrix& observable,
                            const QuasiDecomposition& decomp,
                            const SamplingPlan& plan) {
  const int d = channel.dim_in;
  if (channel.dim_out != d)
    throw std::invalid_argument("run_protocol: channel must have equal dims");
  if (!is_trace_preserving(channel))
    throw std::invalid_argument("run_protocol: channel must be trace preserving");
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("run_protocol: state dimension mismatch");
  if (!is_hermitian(rho))
    throw std::invalid_argument("run_protocol: state must be hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
    throw std::invalid_argument("run_protocol: state must have unit trace");
  if (observable.rows() != d || observable.cols() != d)
    throw std::invalid_argument("run_protocol: observable dimension mismatch");
  if (!is_hermitian(observable))
    throw std::invalid_argument("run_protocol: observable must be hermitian");
  if (decomp.terms.empty())
    throw std::invalid_argument("run_protocol: empty decomposition");

  const EigResult rho_eig = eig_hermitian(rho);
  if (rho_eig.values.minCoeff() < -numerics().psd_tol)
    throw std::invalid_argument("run_protocol: state must be positive semidefinite");
  const EigResult obs = eig_hermitian(observable);
  if (obs.values.cwiseAbs().maxCoeff() > 1.0 + 1e-9)
    throw std::invalid_argument("run_protocol: observable must satisfy ||O||_inf <= 1");

  const double gamma = decomp.gamma();
  const Matrix noisy = choi_apply(channel, rho);  // the state handed to the inverter

  // Exact per-term output states and the Born CDF over the observable's
  // eigenbasis; the sample loop then only draws indices.
  const int n_terms = static_cast<int>(decomp.terms.size());
  std::vector<double> term_cdf(n_terms);
  std::vector<double> sign(n_terms);
  std::vector<std::vector<double>> born_cdf(n_terms);
  {
    double acc = 0.0;
    for (int t = 0; t < n_terms; ++t) {
      const auto& term = decomp.terms[t];
      acc += std::abs(term.eta) / gamma;
      term_cdf[t] = acc;
      sign[t] = (term.eta >= 0.0) ? 1.0 : -1.0;

      Matrix out;
      switch (term.op.kind) {
        case PrimitiveOp::Kind::Bypass:
          out = noisy;
          break;
        case PrimitiveOp::Kind::DiscardToMixed:
          out = identity_matrix(d) / d;
          break;
        case PrimitiveOp::Kind::ApplyTimes: {
          out = noisy;
          for (int i = 0; i < term.op.times; ++i) out = choi_apply(channel, out);
          break;
        }
        case PrimitiveOp::Kind::CombContraction: {
          if (!term.op.comb)
            throw std::invalid_argument("run_protocol: CombContraction without comb");
          const ChoiOperator folded = contract(*term.op.comb, channel);
          out = choi_apply(folded, noisy);
          break;
        }
      }

      std::vector<double> cdf(obs.values.size());
      double p_acc = 0.0;
      for (Eigen::Index k = 0; k < obs.values.size(); ++k) {
        const Vector v = obs.vectors.col(k);
        double prob = (v.adjoint() * out * v)(0, 0).real();
        if (prob < 0.0) prob = 0.0;  // clip roundoff
        p_acc += prob;
        cdf[k] = p_acc;
      }
      // Normalize away accumulated roundoff; outputs are exact states.
      for (auto& c : cdf) c /= p_acc;
      born_cdf[t] = std::move(cdf);
    }
    term_cdf[n_terms - 1] = 1.0;
  }

  ProtocolResult result;
  result.samples = plan.samples;
  result.gamma = gamma;
  result.epsilon = plan.epsilon;
  result.delta = plan.delta;
  result.seed = plan.seed;
  std::vector<std::uint64_t> counts(n_terms, 0);

  double mean = 0.0;
  double m2 = 0.0;
  const double tie_tol = 1e-12;
  for (std::uint64_t s = 0; s < plan.samples; ++s) {
    const double u_term = counter_uniform(plan.seed, s, 0);
    int t = 0;
    while (t + 1 < n_terms && u_term >= term_cdf[t] - tie_tol) ++t;
    ++counts[t];

    const double u_born = counter_uniform(plan.seed, s, 1);
    const auto& cdf = born_cdf[t];
    size_t k = 0;
    while (k + 1 < cdf.size() && u_born >= cdf[k] - tie_tol) ++k;

    const double x = gamma * sign[t] * obs.values(static_cast<Eigen::Index>(k));
    const double delta_x = x - mean;
    mean += delta_x / static_cast<double>(s + 1);
    m2 += delta_x * (x - mean);
  }

  result.estimate = mean;
  result.variance =
      (plan.samples > 1) ? m2 / static_cast<double>(plan.samples - 1) : 0.0;
  for (int t = 0; t < n_terms; ++t)
    result.term_counts[decomp.terms[t].op.name()] += counts[t];
  return result;
}

}  // namespace vcomb
