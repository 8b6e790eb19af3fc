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

#include "vcomb/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

namespace vcomb {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("serialize: ") + what);
}

}  // namespace

Json to_json(const Matrix& m) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m.size()));
  im.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = re;
  j["im"] = im;
  return j;
}

Matrix matrix_from_json(const Json& j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") &&
              j.contains("re") && j.contains("im"),
          "matrix object needs rows/cols/re/im");
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  require(rows >= 0 && cols >= 0, "matrix shape must be non-negative");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  require(static_cast<Eigen::Index>(re.size()) == rows * cols &&
              re.size() == im.size(),
          "matrix payload size mismatch");
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k)
      m(r, c) = Complex(re[k], im[k]);
  return m;
}

Json to_json(const SystemLayout& layout) {
  Json j = Json::array();
  for (const Subsystem& part : layout.parts())
    j.push_back({{"label", part.label}, {"dim", part.dim}});
  return j;
}

SystemLayout layout_from_json(const Json& j) {
  require(j.is_array(), "layout must be an array");
  std::vector<Subsystem> parts;
  for (const Json& entry : j) {
    require(entry.contains("label") && entry.contains("dim"),
            "layout entry needs label/dim");
    parts.push_back({entry.at("label").get<std::string>(),
                     entry.at("dim").get<int>()});
  }
  return SystemLayout(std::move(parts));
}

Json to_json(const ChoiOperator& n) {
  Json j;
  j["dim_in"] = n.dim_in;
  j["dim_out"] = n.dim_out;
  j["matrix"] = to_json(n.matrix);
  return j;
}

ChoiOperator choi_from_json(const Json& j) {
  require(j.contains("dim_in") && j.contains("dim_out") && j.contains("matrix"),
          "choi object needs dim_in/dim_out/matrix");
  ChoiOperator n;
  n.dim_in = j.at("dim_in").get<int>();
  n.dim_out = j.at("dim_out").get<int>();
  n.matrix = matrix_from_json(j.at("matrix"));
  require(n.dim_in >= 1 && n.dim_out >= 1, "choi dimensions must be positive");
  require(n.matrix.rows() == static_cast<Eigen::Index>(n.dim_in) * n.dim_out &&
              n.matrix.rows() == n.matrix.cols(),
          "choi matrix shape inconsistent with dimensions");
  return n;
}

Json to_json(const QuantumComb& c) {
  Json j;
  j["slots"] = c.slots;
  j["dim"] = c.dim;
  j["layout"] = to_json(c.layout);
  j["choi"] = to_json(c.choi);
  return j;
}

QuantumComb comb_from_json(const Json& j) {
  require(j.contains("slots") && j.contains("dim") && j.contains("layout") &&
              j.contains("choi"),
          "comb object needs slots/dim/layout/choi");
  QuantumComb c;
  c.slots = j.at("slots").get<int>();
  c.dim = j.at("dim").get<int>();
  c.layout = layout_from_json(j.at("layout"));
  c.choi = matrix_from_json(j.at("choi"));
  require(c.layout == comb_layout(c.slots, c.dim),
          "comb layout does not match its slots/dim");
  require(c.choi.rows() == c.layout.total_dim() && c.choi.rows() == c.choi.cols(),
          "comb matrix shape inconsistent with layout");
  return c;
}

Json to_json(const VirtualComb& vc) {
  Json j;
  j["slots"] = vc.slots();
  j["dim"] = vc.dim();
  Json terms = Json::array();
  for (const VirtualTerm& term : vc.terms)
    terms.push_back({{"eta", term.eta}, {"comb", to_json(term.comb)}});
  j["terms"] = std::move(terms);
  return j;
}

VirtualComb virtual_comb_from_json(const Json& j) {
  require(j.contains("terms") && j.at("terms").is_array() &&
              !j.at("terms").empty(),
          "virtual comb needs a non-empty terms array");
  VirtualComb vc;
  for (const Json& entry : j.at("terms")) {
    require(entry.contains("eta") && entry.contains("comb"),
            "virtual term needs eta/comb");
    vc.terms.push_back(
        {entry.at("eta").get<double>(), comb_from_json(entry.at("comb"))});
  }
  if (j.contains("slots"))
    require(j.at("slots").get<int>() == vc.slots(),
            "virtual comb slots field disagrees with terms");
  if (j.contains("dim"))
    require(j.at("dim").get<int>() == vc.dim(),
            "virtual comb dim field disagrees with terms");
  return vc;
}

Json to_json(const InverterRecipe& r) {
  Json coeffs;
  coeffs["id"] = r.eta_id;
  coeffs["D"] = r.eta_mix;
  for (int i = 1; i <= r.slots; ++i)
    coeffs[std::to_string(i)] = r.eta_apply.at(static_cast<std::size_t>(i - 1));
  Json j;
  j["n"] = r.slots;
  j["dim"] = r.dim;
  j["alphas"] = r.alphas;
  j["coeffs"] = std::move(coeffs);
  j["gamma"] = r.gamma;
  return j;
}

InverterRecipe recipe_from_json(const Json& j) {
  require(j.contains("n") && j.contains("alphas") && j.contains("coeffs") &&
              j.contains("gamma"),
          "recipe object needs n/alphas/coeffs/gamma");
  InverterRecipe r;
  r.slots = j.at("n").get<int>();
  r.dim = j.value("dim", 0);
  r.alphas = j.at("alphas").get<std::vector<double>>();
  require(static_cast<int>(r.alphas.size()) == r.slots + 1,
          "recipe needs n+1 alpha values");
  const Json& coeffs = j.at("coeffs");
  require(coeffs.contains("id") && coeffs.contains("D"),
          "recipe coefficients need id/D entries");
  r.eta_id = coeffs.at("id").get<double>();
  r.eta_mix = coeffs.at("D").get<double>();
  for (int i = 1; i <= r.slots; ++i) {
    const std::string key = std::to_string(i);
    require(coeffs.contains(key), "recipe coefficients missing an apply entry");
    r.eta_apply.push_back(coeffs.at(key).get<double>());
  }
  r.gamma = j.at("gamma").get<double>();
  return r;
}

Json to_json(const FeasibilityReport& r) {
  Json j;
  j["feasible"] = r.feasible;
  j["rank_a"] = r.rank_a;
  j["rank_ab"] = r.rank_ab;
  j["residual"] = r.residual;
  j["negativity_witness"] = r.negativity_witness;
  return j;
}

Json to_json(const ProtocolResult& r) {
  Json j;
  j["estimate"] = r.estimate;
  j["S"] = r.samples;
  j["gamma"] = r.gamma;
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["seed"] = r.seed;
  j["term_counts"] = r.term_counts;
  j["variance"] = r.variance;
  return j;
}

ProtocolResult protocol_result_from_json(const Json& j) {
  require(j.contains("estimate") && j.contains("S") && j.contains("gamma") &&
              j.contains("epsilon") && j.contains("delta") && j.contains("seed"),
          "result object needs estimate/S/gamma/epsilon/delta/seed");
  ProtocolResult r;
  r.estimate = j.at("estimate").get<double>();
  r.samples = j.at("S").get<std::uint64_t>();
  r.gamma = j.at("gamma").get<double>();
  r.epsilon = j.at("epsilon").get<double>();
  r.delta = j.at("delta").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("term_counts"))
    r.term_counts = j.at("term_counts").get<std::map<std::string, std::uint64_t>>();
  r.variance = j.value("variance", 0.0);
  return r;
}

Json to_json(const DiamondResult& r) {
  Json j;
  j["value"] = r.value;
  j["bisections"] = r.bisections;
  j["iterations"] = r.iterations;
  j["residual_psd"] = r.residual_psd;
  j["residual_gap"] = r.residual_gap;
  j["residual_marginal"] = r.residual_marginal;
  return j;
}

std::string error_curve_csv(const std::vector<ErrorCurveRow>& rows) {
  std::string out = "n,p_star,e_wc\n";
  char buf[80];
  for (const ErrorCurveRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", row.slots, row.p_star,
                  row.e_wc);
    out += buf;
  }
  return out;
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::random_device rd;
  const fs::path temp =
      target.parent_path() /
      (target.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write_file: cannot open " +
                                       temp.string());
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(temp, ec);
      throw std::runtime_error("atomic_write_file: write failed for " +
                               temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw std::runtime_error("atomic_write_file: rename failed for " + path);
  }
}

}  // namespace vcomb
