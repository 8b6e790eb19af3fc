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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcomb/analysis.hpp"
#include "vcomb/channel.hpp"
#include "vcomb/comb.hpp"
#include "vcomb/invert.hpp"
#include "vcomb/rng.hpp"
#include "vcomb/sampler.hpp"
#include "vcomb/serialize.hpp"

namespace {

using namespace vcomb;

constexpr std::uint64_t kDefaultSeed = 0xC0DE5EEDull;

// Bad flag values and malformed spec strings; mapped to exit code 1, while
// mathematically infeasible requests (well-formed but unsolvable) exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    std::size_t used = 0;
    try {
      out.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != tok.size())
      throw UsageError(what + ": cannot parse '" + tok + "' as a number");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct SpecFields {
  std::string type;
  std::map<std::string, std::string> kv;
  std::set<std::string> bare;
};

SpecFields parse_spec(const std::string& spec) {
  SpecFields out;
  const std::size_t colon = spec.find(':');
  out.type = spec.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::size_t pos = colon + 1;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string tok =
        comma == std::string::npos ? spec.substr(pos) : spec.substr(pos, comma - pos);
    const std::size_t eq = tok.find('=');
    if (tok.empty())
      throw UsageError("channel spec: empty field in '" + spec + "'");
    if (eq == std::string::npos)
      out.bare.insert(tok);
    else
      out.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int spec_int(const SpecFields& f, const std::string& key, int fallback) {
  const auto it = f.kv.find(key);
  if (it == f.kv.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw UsageError("channel spec: bad integer for '" + key + "'");
  }
}

double spec_double(const SpecFields& f, const std::string& key) {
  const auto it = f.kv.find(key);
  if (it == f.kv.end())
    throw UsageError("channel spec: missing required field '" + key + "'");
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw UsageError("channel spec: bad number for '" + key + "'");
  }
}

std::uint64_t spec_seed(const SpecFields& f, std::uint64_t fallback) {
  const auto it = f.kv.find("seed");
  if (it == f.kv.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw UsageError("channel spec: bad seed value");
  }
}

/// "dep:d=2,p=0.3" | "unitary:haar,seed=7[,d=2]" | "random:d=2,seed=7"
ChoiOperator parse_channel(const std::string& spec) {
  const SpecFields f = parse_spec(spec);
  if (f.type == "dep") {
    const int d = spec_int(f, "d", 2);
    const double p = spec_double(f, "p");
    if (d < 2) throw UsageError("channel spec: dep needs d >= 2");
    if (p < 0.0 || p > 1.0) throw UsageError("channel spec: dep needs p in [0, 1]");
    return choi_depolarizing(d, p);
  }
  if (f.type == "unitary") {
    for (const auto& token : f.bare)
      if (token != "haar")
        throw UsageError("channel spec: unknown token '" + token + "'");
    const int d = spec_int(f, "d", 2);
    if (d < 2) throw UsageError("channel spec: unitary needs d >= 2");
    return choi_unitary(random_unitary(d, spec_seed(f, kDefaultSeed)));
  }
  if (f.type == "random") {
    const int d = spec_int(f, "d", 2);
    if (d < 2) throw UsageError("channel spec: random needs d >= 2");
    return random_channel(d, d, spec_seed(f, kDefaultSeed));
  }
  throw UsageError("channel spec: unknown type '" + f.type +
                   "' (expected dep, unitary, or random)");
}

Matrix parse_state(const std::string& name, int d) {
  Matrix rho = Matrix::Zero(d, d);
  if (name == "zero") {
    rho(0, 0) = 1.0;
  } else if (name == "one") {
    rho(1, 1) = 1.0;
  } else if (name == "plus") {
    rho.setConstant(Complex(1.0 / d, 0.0));
  } else if (name == "mixed") {
    rho = identity_matrix(d) / static_cast<double>(d);
  } else {
    throw UsageError("state: expected zero, one, plus, or mixed");
  }
  return rho;
}

Matrix parse_obs(const std::string& name, int d) {
  if (name == "I") return identity_matrix(d);
  if (d != 2)
    throw UsageError("observable: " + name + " is qubit-only (d = 2)");
  Matrix o = Matrix::Zero(2, 2);
  if (name == "Z") {
    o(0, 0) = 1.0;
    o(1, 1) = -1.0;
  } else if (name == "X") {
    o(0, 1) = 1.0;
    o(1, 0) = 1.0;
  } else if (name == "Y") {
    o(0, 1) = Complex(0.0, -1.0);
    o(1, 0) = Complex(0.0, 1.0);
  } else {
    throw UsageError("observable: expected Z, X, Y, or I");
  }
  return o;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

//------------------------------------------------------------------------
// subcommands
//------------------------------------------------------------------------

int cmd_invert_depolarizing(int d, int n, const std::string& params_text,
                            bool verify) {
  DepolarizingFamily family;
  family.dim = d;
  family.params = parse_list(params_text, "--params");
  const DepolarizingInverter inv = build_depolarizing_inverter(family, n);

  Json out = to_json(inv.recipe);
  if (verify) {
    const VirtualReport report = validate_virtual(inv.comb);
    Json residuals = Json::array();
    const ChoiOperator ident = choi_identity(d);
    for (double p : family.params) {
      const ChoiOperator composed =
          link(choi_depolarizing(d, p), contract(inv.comb, choi_depolarizing(d, p)));
      residuals.push_back({{"p", p},
                           {"residual",
                            0.5 * trace_norm(composed.matrix - ident.matrix)}});
    }
    double max_recursion = 0.0;
    for (double r : report.recursion_residuals)
      max_recursion = std::max(max_recursion, r);
    out["verify"] = {{"virtual_pass", report.pass},
                     {"affine_error", report.affine_error},
                     {"max_recursion_residual", max_recursion},
                     {"residuals", std::move(residuals)}};
  }
  emit(out);
  return 0;
}

int cmd_wc_error(const std::string& interval_text, int nmax, int d,
                 const std::string& out_path) {
  const std::vector<double> ab = parse_list(interval_text, "--interval");
  if (ab.size() != 2) throw UsageError("--interval: expected exactly 'a,b'");
  if (!(ab[0] < ab[1]))
    throw UsageError("--interval: endpoints out of order (need a < b)");
  if (ab[0] < 0.0 || ab[1] >= 1.0)
    throw UsageError("--interval: endpoints must lie inside [0, 1)");
  if (nmax < 1 || nmax > 30) throw UsageError("--nmax: must lie in 1..30");
  if (d < 2) throw UsageError("--d: must be at least 2");

  const std::string csv = error_curve_csv(wc_error_curve(ab[0], ab[1], nmax, d));
  if (out_path.empty())
    std::cout << csv;
  else
    atomic_write_file(out_path, csv);
  return 0;
}

int cmd_protocol_run(const std::string& channel_spec, const std::string& family_text,
                     const std::string& state_name, const std::string& obs_name,
                     double eps, double delta, std::uint64_t seed) {
  const ChoiOperator channel = parse_channel(channel_spec);
  if (channel.dim_in != channel.dim_out)
    throw UsageError("protocol-run: channel must have equal input/output dims");
  const int d = channel.dim_in;

  DepolarizingFamily family;
  family.dim = d;
  family.params = parse_list(family_text, "--family");
  if (family.params.size() < 2)
    throw UsageError("--family: need at least two parameters");
  const int n = static_cast<int>(family.params.size()) - 1;

  const DepolarizingInverter inv = build_depolarizing_inverter(family, n);
  const QuasiDecomposition decomp = decompose_recipe(inv.recipe);
  const SamplingPlan plan = plan_samples(eps, delta, inv.recipe.gamma, seed);
  const ProtocolResult result = run_protocol(
      channel, parse_state(state_name, d), parse_obs(obs_name, d), decomp, plan);
  emit(to_json(result));
  return 0;
}

int cmd_unitary_inverse(int d, int trials, std::uint64_t seed,
                        std::uint64_t samples) {
  if (d != 2 && d != 3) throw UsageError("--d: must be 2 or 3");
  if (trials < 1) throw UsageError("--trials: must be positive");

  const VirtualComb vc = build_unitary_inverter(d);
  Json out;
  out["d"] = d;
  out["trials"] = trials;
  out["gamma"] = vc.gamma();
  out["seed"] = seed;

  if (samples == 0) {
    double max_residual = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Matrix u = random_unitary(d, counter_mix(seed, t, 0));
      const ChoiOperator got = contract(vc, choi_unitary(u));
      const ChoiOperator want = choi_unitary(Matrix(u.adjoint()));
      max_residual = std::max(max_residual, max_abs(got.matrix - want.matrix));
    }
    out["mode"] = "exact";
    out["max_residual"] = max_residual;
  } else {
    const QuasiDecomposition decomp = decompose_unitary_inverter(d);
    // O = 2|0><0| - I (the Pauli Z for qubits); target tr[O U^dag |0><0| U],
    // reached by preparing the pre-image of |0><0| under U.
    Matrix obs = -identity_matrix(d);
    obs(0, 0) = 1.0;
    Matrix zero = Matrix::Zero(d, d);
    zero(0, 0) = 1.0;

    double abs_err = 0.0;
    for (int t = 0; t < trials; ++t) {
      const Matrix u = random_unitary(d, counter_mix(seed, t, 0));
      const Matrix rho = u.adjoint() * zero * u;
      const double truth = (rho * obs).trace().real();

      SamplingPlan plan;
      plan.gamma = decomp.gamma();
      plan.samples = samples;
      plan.seed = counter_mix(seed, t, 1);
      const ProtocolResult r =
          run_protocol(choi_unitary(u), rho, obs, decomp, plan);
      abs_err += std::abs(r.estimate - truth);
    }
    out["mode"] = "sampling";
    out["samples"] = samples;
    out["mean_abs_error"] = abs_err / trials;
  }
  emit(out);
  return 0;
}

int cmd_overhead_table(int dmax) {
  if (dmax < 2 || dmax > 6) throw UsageError("--dmax: must lie in 2..6");
  std::cout << "d,nu\n";
  char buf[64];
  for (int d = 2; d <= dmax; ++d) {
    // Optimal single-slot inversion fidelity 2/d^2 gives nu = d^2 - 1.
    const double nu = overhead_from_fidelity(d, 1, 2.0 / (d * d));
    std::snprintf(buf, sizeof buf, "%d,%.4f\n", d, nu);
    std::cout << buf;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vcomb: virtual-comb construction, channel inversion, and "
      "quasiprobability protocol runs"};
  app.require_subcommand(1);
  app.footer(
      "All randomness is deterministically seeded; the default seed is "
      "0xC0DE5EED.\nExit codes: 0 ok, 1 usage, 2 infeasible, 3 no convergence.");

  // invert-depolarizing
  auto* inv = app.add_subcommand(
      "invert-depolarizing",
      "Exact n-slot inverter for an (n+1)-member depolarizing family");
  int inv_d = 2, inv_n = 1;
  std::string inv_params;
  bool inv_verify = false;
  inv->add_option("--d", inv_d, "Hilbert dimension")->capture_default_str();
  inv->add_option("--n", inv_n, "number of comb slots")->capture_default_str();
  inv->add_option("--params", inv_params, "comma-separated p1,...,p_{n+1}")
      ->required();
  inv->add_flag("--verify", inv_verify,
                "contract against each family member and report residuals");

  // wc-error
  auto* wc = app.add_subcommand(
      "wc-error", "Worst-case inversion error curve over an interval of p");
  std::string wc_interval, wc_out;
  int wc_nmax = 16, wc_d = 2;
  wc->add_option("--interval", wc_interval, "interval as 'a,b'")->required();
  wc->add_option("--nmax", wc_nmax, "largest slot count (<= 30)")
      ->capture_default_str();
  wc->add_option("--d", wc_d, "Hilbert dimension")->capture_default_str();
  wc->add_option("--out", wc_out, "CSV output path (default stdout)");

  // protocol-run
  auto* prot = app.add_subcommand(
      "protocol-run", "Quasiprobability error-cancellation estimate");
  std::string prot_channel, prot_family, prot_state = "zero", prot_obs = "Z";
  double prot_eps = 0.05, prot_delta = 0.05;
  std::uint64_t prot_seed = kDefaultSeed;
  prot->add_option("--channel", prot_channel,
                   "true channel, e.g. dep:d=2,p=0.3 | unitary:haar,seed=7 | "
                   "random:d=2,seed=7")
      ->required();
  prot->add_option("--family", prot_family,
                   "assumed depolarizing parameters, comma separated")
      ->required();
  prot->add_option("--state", prot_state, "input state: zero|one|plus|mixed")
      ->capture_default_str();
  prot->add_option("--obs", prot_obs, "observable: Z|X|Y|I")
      ->capture_default_str();
  prot->add_option("--eps", prot_eps, "target accuracy")->capture_default_str();
  prot->add_option("--delta", prot_delta, "failure probability")
      ->capture_default_str();
  prot->add_option("--seed", prot_seed, "RNG seed")->capture_default_str();

  // unitary-inverse
  auto* uni = app.add_subcommand(
      "unitary-inverse",
      "Universal unitary inversion: exact contraction check or sampled estimator");
  int uni_d = 2, uni_trials = 200;
  std::uint64_t uni_seed = kDefaultSeed, uni_samples = 0;
  uni->add_option("--d", uni_d, "Hilbert dimension (2 or 3)")
      ->capture_default_str();
  uni->add_option("--trials", uni_trials, "number of Haar unitaries")
      ->capture_default_str();
  uni->add_option("--seed", uni_seed, "RNG seed")->capture_default_str();
  uni->add_option("--samples", uni_samples,
                  "per-trial sample count; 0 selects the exact mode")
      ->capture_default_str();

  // overhead-table
  auto* table = app.add_subcommand(
      "overhead-table", "Optimal single-slot inversion sampling overheads");
  int table_dmax = 6;
  table->add_option("--dmax", table_dmax, "largest dimension (<= 6)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (inv->parsed())
      return cmd_invert_depolarizing(inv_d, inv_n, inv_params, inv_verify);
    if (wc->parsed()) return cmd_wc_error(wc_interval, wc_nmax, wc_d, wc_out);
    if (prot->parsed())
      return cmd_protocol_run(prot_channel, prot_family, prot_state, prot_obs,
                              prot_eps, prot_delta, prot_seed);
    if (uni->parsed())
      return cmd_unitary_inverse(uni_d, uni_trials, uni_seed, uni_samples);
    if (table->parsed()) return cmd_overhead_table(table_dmax);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n"
              << to_json(e.report).dump(2) << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
