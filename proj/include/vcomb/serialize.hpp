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

#include <string>
#include <vector>

#include <json.hpp>

#include "vcomb/analysis.hpp"
#include "vcomb/channel.hpp"
#include "vcomb/comb.hpp"
#include "vcomb/invert.hpp"
#include "vcomb/sampler.hpp"

namespace vcomb {

using Json = nlohmann::json;

// All encoders are value-stable: encode(decode(encode(x))) produces the same
// bytes, which the test suite pins down.

Json to_json(const Matrix& m);  // {"rows","cols","re","im"}
Matrix matrix_from_json(const Json& j);

Json to_json(const SystemLayout& layout);  // [{"label","dim"}...]
SystemLayout layout_from_json(const Json& j);

Json to_json(const ChoiOperator& n);  // {"dim_in","dim_out","matrix"}
ChoiOperator choi_from_json(const Json& j);

Json to_json(const QuantumComb& c);  // {"slots","dim","layout","choi"}
QuantumComb comb_from_json(const Json& j);

Json to_json(const VirtualComb& vc);  // comb fields plus "terms"
VirtualComb virtual_comb_from_json(const Json& j);

Json to_json(const InverterRecipe& r);  // {"n","alphas","coeffs","gamma"}
InverterRecipe recipe_from_json(const Json& j);

Json to_json(const FeasibilityReport& r);
Json to_json(const ProtocolResult& r);
ProtocolResult protocol_result_from_json(const Json& j);
Json to_json(const DiamondResult& r);

/// CSV with header "n,p_star,e_wc", 12 significant digits per value.
std::string error_curve_csv(const std::vector<ErrorCurveRow>& rows);

/// Write via a temp file in the same directory plus rename, so readers never
/// observe a partial file.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace vcomb
