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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vcomb/serialize.hpp"

using namespace vcomb;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// encode -> decode -> encode must reproduce the original bytes.
template <typename T, typename Decoder>
void check_stable(const T& value, Decoder decode) {
  const Json first = to_json(value);
  const T back = decode(first);
  const Json second = to_json(back);
  CHECK(first.dump() == second.dump());
}

}  // namespace

TEST_CASE("matrix round trip") {
  Matrix m(2, 3);
  m << Complex(1.0, -2.0), Complex(0.0, 0.5), Complex(3.25, 0.0),
      Complex(-1.0, 1.0), Complex(0.125, -0.25), Complex(2.0, 7.0);
  check_stable(m, matrix_from_json);

  const Json j = to_json(m);
  CHECK(j.at("rows") == 2);
  CHECK(j.at("cols") == 3);
  CHECK(j.at("re").size() == 6);
  const Matrix back = matrix_from_json(j);
  CHECK(max_abs(back - m) == 0.0);
}

TEST_CASE("layout round trip") {
  const SystemLayout layout({{"P", 1}, {"I1", 2}, {"O1", 2}, {"F", 4}});
  check_stable(layout, layout_from_json);
  const Json j = to_json(layout);
  REQUIRE(j.is_array());
  CHECK(j[0].at("label") == "P");
  CHECK(j[3].at("dim") == 4);
}

TEST_CASE("channel round trip") {
  check_stable(choi_depolarizing(2, 0.3), choi_from_json);
  check_stable(random_channel(2, 3, 9), choi_from_json);
}

TEST_CASE("comb and virtual comb round trips") {
  const QuantumComb bypass = build_primitive(Primitive::bypass(), 1, 2);
  check_stable(bypass, comb_from_json);

  const DepolarizingInverter inv = build_depolarizing_inverter({2, {0.2, 0.5}}, 1);
  check_stable(inv.comb, virtual_comb_from_json);

  // Structural integrity after the trip, not just byte equality.
  const VirtualComb back = virtual_comb_from_json(to_json(inv.comb));
  CHECK(back.slots() == inv.comb.slots());
  CHECK(back.dim() == inv.comb.dim());
  REQUIRE(back.terms.size() == inv.comb.terms.size());
  CHECK(validate_virtual(back).pass);
}

TEST_CASE("recipe round trip carries every coefficient") {
  const DepolarizingInverter inv =
      build_depolarizing_inverter({2, {0.0, 0.25, 0.5}}, 2);
  check_stable(inv.recipe, recipe_from_json);

  const Json j = to_json(inv.recipe);
  CHECK(j.at("n") == 2);
  CHECK(j.at("gamma") == doctest::Approx(13.0));
  CHECK(j.at("coeffs").at("id") == doctest::Approx(13.0 / 3.0));
  const InverterRecipe back = recipe_from_json(j);
  CHECK(back.eta_apply.size() == 2);
  CHECK(back.eta_apply[1] == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("protocol result round trip") {
  ProtocolResult r;
  r.estimate = 0.987;
  r.samples = 6640;
  r.gamma = 5.0;
  r.epsilon = 0.1;
  r.delta = 0.05;
  r.seed = 0xC0DE5EEDull;
  r.term_counts = {{"bypass", 4000}, {"apply1", 2640}};
  r.variance = 24.5;
  check_stable(r, protocol_result_from_json);
  const ProtocolResult back = protocol_result_from_json(to_json(r));
  CHECK(back.seed == r.seed);
  CHECK(back.term_counts.at("apply1") == 2640);
}

TEST_CASE("feasibility and diamond reports encode") {
  FeasibilityReport fr;
  fr.feasible = false;
  fr.rank_a = 2;
  fr.rank_ab = 3;
  fr.residual = 0.01;
  fr.negativity_witness = -0.5;
  const Json j = to_json(fr);
  CHECK(j.at("feasible") == false);
  CHECK(j.at("rank_ab") == 3);

  DiamondResult dr;
  dr.value = 0.3;
  dr.bisections = 20;
  const Json dj = to_json(dr);
  CHECK(dj.at("value") == doctest::Approx(0.3));
  CHECK(dj.at("bisections") == 20);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2},
                                        {"cols", 2},
                                        {"re", {1.0, 2.0}},
                                        {"im", {0.0, 0.0}}}),
                  std::invalid_argument);  // wrong element count
  CHECK_THROWS_AS(layout_from_json(Json::array({Json{{"label", "a"}}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(choi_from_json(Json{{"dim_in", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(recipe_from_json(Json{{"n", 1}}), std::invalid_argument);

  // A comb whose layout does not match its declared shape must not decode.
  const QuantumComb bypass = build_primitive(Primitive::bypass(), 1, 2);
  Json j = to_json(bypass);
  j["slots"] = 2;
  CHECK_THROWS_AS(comb_from_json(j), std::invalid_argument);
}

TEST_CASE("error curve CSV format") {
  const std::vector<ErrorCurveRow> rows = {{1, 0.25, 0.375}};
  CHECK(error_curve_csv(rows) == "n,p_star,e_wc\n1,0.25,0.375\n");
  const std::vector<ErrorCurveRow> rounded = {{2, 0.1056625, 4.811252243245e-2}};
  CHECK(error_curve_csv(rounded) == "n,p_star,e_wc\n2,0.1056625,0.0481125224324\n");
}

TEST_CASE("atomic file writes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vcomb_serialize_test";
  fs::create_directories(dir);
  const fs::path target = dir / "curve.csv";

  atomic_write_file(target.string(), "n,p_star,e_wc\n1,0.25,0.375\n");
  CHECK(slurp(target.string()) == "n,p_star,e_wc\n1,0.25,0.375\n");

  atomic_write_file(target.string(), "replaced");
  CHECK(slurp(target.string()) == "replaced");

  // No temporary droppings left behind.
  int entries = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
  fs::remove_all(dir);
}
