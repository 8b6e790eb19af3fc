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

#include "vcomb/matrix.hpp"

namespace vcomb {

struct Subsystem {
  std::string label;
  int dim = 0;
};

/// Ordered list of labeled tensor factors. Composite indices are row-major in
/// this order (first factor is the slowest index).
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> parts);

  int size() const { return static_cast<int>(parts_.size()); }
  const Subsystem& at(int i) const { return parts_.at(i); }
  const std::vector<Subsystem>& parts() const { return parts_; }

  int total_dim() const;
  std::vector<int> dims() const;

  bool contains(const std::string& label) const;
  /// Position of a label; throws std::invalid_argument for unknown labels.
  int index_of(const std::string& label) const;

  /// Layout with the given labels removed, order of the rest preserved.
  SystemLayout without(const std::vector<std::string>& labels) const;

  bool operator==(const SystemLayout& other) const;

 private:
  std::vector<Subsystem> parts_;
};

//------------------------------------------------------------------------
// multi-index operations
//------------------------------------------------------------------------

/// Trace over the named factors; remaining factors keep their order.
Matrix partial_trace(const Matrix& m, const SystemLayout& layout,
                     const std::vector<std::string>& traced);

/// Transpose one factor in place.
Matrix partial_transpose(const Matrix& m, const SystemLayout& layout,
                         const std::string& label);

/// Reorder tensor factors. `order` must be a permutation of the layout labels;
/// the result is indexed row-major in the new order.
Matrix permute_systems(const Matrix& m, const SystemLayout& layout,
                       const std::vector<std::string>& order);

}  // namespace vcomb
