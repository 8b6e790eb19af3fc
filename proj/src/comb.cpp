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

#include "vcomb/comb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vcomb {

namespace {

constexpr int kDenseDimCap = 4096;

std::string slot_in(int k) { return "I" + std::to_string(k); }
std::string slot_out(int k) { return "O" + std::to_string(k); }

// Number of slots encoded by a P, I1, O1, ..., F layout; throws when the
// layout is not of that shape or mixes dimensions.
int slots_of_layout(const SystemLayout& layout) {
  const int parts = layout.size();
  if (parts < 2 || parts % 2 != 0)
    throw std::invalid_argument("comb layout must have factors P, I1, O1, ..., F");
  const int n = (parts - 2) / 2;
  const int d = layout.at(0).dim;
  const SystemLayout expected = comb_layout(n, d);
  if (!(layout == expected))
    throw std::invalid_argument("comb layout must be P, I1, O1, ..., F with uniform dimension");
  return n;
}

}  // namespace

SystemLayout comb_layout(int slots, int d) {
  if (slots < 0) throw std::invalid_argument("comb_layout: negative slot count");
  if (d < 2) throw std::invalid_argument("comb_layout: dimension must be at least 2");
  std::vector<Subsystem> parts;
  parts.push_back({"P", d});
  for (int k = 1; k <= slots; ++k) {
    parts.push_back({slot_in(k), d});
    parts.push_back({slot_out(k), d});
  }
  parts.push_back({"F", d});
  return SystemLayout(parts);
}

int VirtualComb::slots() const {
  if (terms.empty()) throw std::invalid_argument("VirtualComb: no terms");
  return terms.front().comb.slots;
}

int VirtualComb::dim() const {
  if (terms.empty()) throw std::invalid_argument("VirtualComb: no terms");
  return terms.front().comb.dim;
}

double VirtualComb::gamma() const {
  double g = 0.0;
  for (const auto& term : terms) g += std::abs(term.eta);
  return g;
}

Matrix VirtualComb::combined_choi() const {
  if (terms.empty()) throw std::invalid_argument("VirtualComb: no terms");
  Matrix sum = Matrix::Zero(terms.front().comb.choi.rows(), terms.front().comb.choi.cols());
  for (const auto& term : terms) {
    if (!(term.comb.layout == terms.front().comb.layout))
      throw std::invalid_argument("VirtualComb: term layouts differ");
    sum += term.eta * term.comb.choi;
  }
  return sum;
}

const SystemLayout& VirtualComb::layout() const {
  if (terms.empty()) throw std::invalid_argument("VirtualComb: no terms");
  return terms.front().comb.layout;
}

//------------------------------------------------------------------------
// validation
//------------------------------------------------------------------------

namespace {

// Marginal recursion shared by deterministic and virtual combs: walking from
// the last slot down, tracing a slot's output must leave the earlier part of
// the network independent of it. Returns residuals for levels slots+1 .. 1
// and finally |C^(0) - 1| at index 0.
std::vector<double> recursion_residuals(const Matrix& choi, const SystemLayout& layout,
                                        int slots, int d) {
  std::vector<double> residuals(slots + 2, 0.0);
  Matrix current = choi;
  SystemLayout current_layout = layout;
  for (int i = slots + 1; i >= 1; --i) {
    // Level i removes I_i (or F at the top) and O_{i-1} (or P at the bottom).
    const std::string in_label = (i == slots + 1) ? "F" : slot_in(i);
    const std::string out_label = (i == 1) ? "P" : slot_out(i - 1);
    const Matrix traced_in = partial_trace(current, current_layout, {in_label});
    const SystemLayout reduced_layout = current_layout.without({in_label});
    Matrix next =
        partial_trace(traced_in, reduced_layout, {out_label}) / static_cast<double>(d);
    const SystemLayout next_layout = reduced_layout.without({out_label});

    // Compare tr_{in}[C^(i)] against C^(i-1) (x) I at out_label's position.
    Matrix expected;
    if (next_layout.size() == 0) {
      expected = next(0, 0) * identity_matrix(d);
    } else {
      std::vector<std::string> order;
      for (const auto& part : next_layout.parts()) order.push_back(part.label);
      order.push_back(out_label);
      Matrix padded = kron(next, identity_matrix(d));
      std::vector<Subsystem> padded_parts = next_layout.parts();
      padded_parts.push_back({out_label, d});
      const SystemLayout padded_layout(padded_parts);
      std::vector<std::string> target_order;
      for (const auto& part : reduced_layout.parts()) target_order.push_back(part.label);
      expected = permute_systems(padded, padded_layout, target_order);
    }
    residuals[i] = max_abs(traced_in - expected);

    current = std::move(next);
    current_layout = next_layout;
  }
  // C^(0) is now a 1x1 matrix; normalization closes the recursion.
  residuals[0] = std::abs(current(0, 0) - Complex(1.0, 0.0));
  return residuals;
}

}  // namespace

CombReport validate_comb(const Matrix& choi, const SystemLayout& layout) {
  const int n = slots_of_layout(layout);
  const int d = layout.at(0).dim;
  const int total = layout.total_dim();
  if (choi.rows() != total || choi.cols() != total)
    throw std::invalid_argument("validate_comb: Choi shape does not match layout");

  CombReport report;
  if (!is_hermitian(choi)) {
    report.pass = false;
    report.is_psd = false;
    report.min_eigenvalue = -max_abs(choi - choi.adjoint().eval());
    return report;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitize(choi),
                                                         Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.is_psd = report.min_eigenvalue >= -numerics().psd_tol;
  report.recursion_residuals = recursion_residuals(choi, layout, n, d);
  report.trace_error =
      std::abs(choi.trace() - Complex(std::pow(static_cast<double>(d), n + 1), 0.0));

  const double tol = numerics().residual_tol;
  bool recursion_ok = true;
  for (double r : report.recursion_residuals)
    if (!(r <= tol)) recursion_ok = false;
  report.pass = report.is_psd && recursion_ok;
  return report;
}

VirtualReport validate_virtual(const VirtualComb& vc) {
  if (vc.terms.empty()) throw std::invalid_argument("validate_virtual: no terms");
  VirtualReport report;
  double sum = 0.0;
  for (const auto& term : vc.terms) sum += term.eta;
  report.affine_error = std::abs(sum - 1.0);

  bool terms_ok = true;
  for (const auto& term : vc.terms) {
    report.term_reports.push_back(validate_comb(term.comb.choi, term.comb.layout));
    if (!report.term_reports.back().pass) terms_ok = false;
  }

  const int n = vc.slots();
  const int d = vc.dim();
  report.recursion_residuals = recursion_residuals(vc.combined_choi(), vc.layout(), n, d);

  const double tol = numerics().residual_tol;
  bool recursion_ok = true;
  for (double r : report.recursion_residuals)
    if (!(r <= tol)) recursion_ok = false;
  report.pass = terms_ok && recursion_ok && report.affine_error <= 1e-10;
  return report;
}

//------------------------------------------------------------------------
// primitives
//------------------------------------------------------------------------

QuantumComb build_primitive(const Primitive& p, int slots, int d) {
  if (slots < 1) throw std::invalid_argument("build_primitive: need at least one slot");
  const SystemLayout layout = comb_layout(slots, d);
  if (layout.total_dim() > kDenseDimCap)
    throw std::invalid_argument("build_primitive: layout exceeds dense dimension cap");

  QuantumComb comb;
  comb.layout = layout;
  comb.slots = slots;
  comb.dim = d;

  const Matrix j_id = choi_identity(d).matrix;  // |I>><<I| on a wire pair
  const Matrix idle = kron(identity_matrix(d) / d, identity_matrix(d));  // I/d (x) I

  switch (p.kind) {
    case Primitive::Kind::DiscardToMixed: {
      // I_P (x) idle slots (x) I_F/d, already in canonical order.
      Matrix m = identity_matrix(d);
      for (int k = 1; k <= slots; ++k) m = kron(m, idle);
      m = kron(m, identity_matrix(d) / d);
      comb.choi = m;
      return comb;
    }
    case Primitive::Kind::Bypass: {
      // Wire P -> F, feed each slot the maximally mixed state.
      Matrix m = j_id;
      std::vector<std::string> build_order = {"P", "F"};
      for (int k = 1; k <= slots; ++k) {
        m = kron(m, idle);
        build_order.push_back(slot_in(k));
        build_order.push_back(slot_out(k));
      }
      std::vector<Subsystem> parts;
      for (const auto& label : build_order) parts.push_back({label, d});
      std::vector<std::string> canonical;
      for (const auto& part : layout.parts()) canonical.push_back(part.label);
      comb.choi = permute_systems(m, SystemLayout(parts), canonical);
      return comb;
    }
    case Primitive::Kind::ApplyTimes: {
      const int i = p.times;
      if (i < 1 || i > slots)
        throw std::invalid_argument("build_primitive: ApplyTimes count out of range");
      // Chain P -> I1, O1 -> I2, ..., Oi -> F; idle the remaining slots.
      Matrix m = j_id;
      std::vector<std::string> build_order = {"P", slot_in(1)};
      for (int k = 1; k < i; ++k) {
        m = kron(m, j_id);
        build_order.push_back(slot_out(k));
        build_order.push_back(slot_in(k + 1));
      }
      m = kron(m, j_id);
      build_order.push_back(slot_out(i));
      build_order.push_back("F");
      for (int k = i + 1; k <= slots; ++k) {
        m = kron(m, idle);
        build_order.push_back(slot_in(k));
        build_order.push_back(slot_out(k));
      }
      std::vector<Subsystem> parts;
      for (const auto& label : build_order) parts.push_back({label, d});
      std::vector<std::string> canonical;
      for (const auto& part : layout.parts()) canonical.push_back(part.label);
      comb.choi = permute_systems(m, SystemLayout(parts), canonical);
      return comb;
    }
  }
  throw std::logic_error("build_primitive: unknown primitive kind");
}

VirtualComb assemble_virtual(const std::vector<std::pair<Primitive, double>>& terms,
                             int slots, int d) {
  if (terms.empty()) throw std::invalid_argument("assemble_virtual: no terms");
  double sum = 0.0;
  for (const auto& [prim, eta] : terms) sum += eta;
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("assemble_virtual: coefficients must sum to 1");
  VirtualComb vc;
  for (const auto& [prim, eta] : terms)
    vc.terms.push_back({eta, build_primitive(prim, slots, d)});
  return vc;
}

//------------------------------------------------------------------------
// contraction
//------------------------------------------------------------------------

ChoiOperator contract(const QuantumComb& comb, const ChoiOperator& channel) {
  const int n = comb.slots;
  const int d = comb.dim;
  if (channel.dim_in != d || channel.dim_out != d)
    throw std::invalid_argument("contract: channel dimension does not match comb");
  if (comb.layout.total_dim() > kDenseDimCap)
    throw std::invalid_argument("contract: layout exceeds dense dimension cap");

  // Fold the channel into one slot at a time: multiply by its transposed Choi
  // on (Ik, Ok) and trace the pair out.
  const Matrix j_t = channel.matrix.transpose();
  Matrix current = comb.choi;
  SystemLayout current_layout = comb.layout;
  for (int k = 1; k <= n; ++k) {
    const int pos = current_layout.index_of(slot_in(k));
    int left = 1, right = 1;
    for (int a = 0; a < pos; ++a) left *= current_layout.at(a).dim;
    for (int a = pos + 2; a < current_layout.size(); ++a)
      right *= current_layout.at(a).dim;
    const Matrix embedded =
        kron(kron(identity_matrix(left), j_t), identity_matrix(right));
    current = partial_trace(current * embedded, current_layout,
                            {slot_in(k), slot_out(k)});
    current_layout = current_layout.without({slot_in(k), slot_out(k)});
  }

  ChoiOperator out;
  out.dim_in = d;
  out.dim_out = d;
  out.matrix = std::move(current);
  return out;
}

ChoiOperator contract(const VirtualComb& vc, const ChoiOperator& channel) {
  QuantumComb combined;
  combined.choi = vc.combined_choi();
  combined.layout = vc.layout();
  combined.slots = vc.slots();
  combined.dim = vc.dim();
  return contract(combined, channel);
}

}  // namespace vcomb
