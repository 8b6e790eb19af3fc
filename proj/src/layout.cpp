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

#include "vcomb/layout.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vcomb {

SystemLayout::SystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
  std::set<std::string> seen;
  for (const auto& part : parts_) {
    if (part.dim < 1)
      throw std::invalid_argument("SystemLayout: factor '" + part.label +
                                  "' has non-positive dimension");
    if (!seen.insert(part.label).second)
      throw std::invalid_argument("SystemLayout: duplicate label '" + part.label + "'");
  }
}

int SystemLayout::total_dim() const {
  int d = 1;
  for (const auto& part : parts_) d *= part.dim;
  return d;
}

std::vector<int> SystemLayout::dims() const {
  std::vector<int> out;
  out.reserve(parts_.size());
  for (const auto& part : parts_) out.push_back(part.dim);
  return out;
}

bool SystemLayout::contains(const std::string& label) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

int SystemLayout::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (parts_[i].label == label) return i;
  throw std::invalid_argument("SystemLayout: unknown label '" + label + "'");
}

SystemLayout SystemLayout::without(const std::vector<std::string>& labels) const {
  for (const auto& label : labels) index_of(label);  // validate
  std::vector<Subsystem> rest;
  for (const auto& part : parts_)
    if (std::find(labels.begin(), labels.end(), part.label) == labels.end())
      rest.push_back(part);
  return SystemLayout(rest);
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (size() != other.size()) return false;
  for (int i = 0; i < size(); ++i)
    if (parts_[i].label != other.parts_[i].label || parts_[i].dim != other.parts_[i].dim)
      return false;
  return true;
}

namespace {

// Row-major strides: stride[j] = product of dims after j.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int j = static_cast<int>(dims.size()) - 2; j >= 0; --j)
    s[j] = s[j + 1] * dims[j + 1];
  return s;
}

void check_shape(const Matrix& m, const SystemLayout& layout, const char* op) {
  const int d = layout.total_dim();
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument(std::string(op) + ": matrix shape does not match layout");
}

}  // namespace

Matrix partial_trace(const Matrix& m, const SystemLayout& layout,
                     const std::vector<std::string>& traced) {
  check_shape(m, layout, "partial_trace");
  std::vector<bool> is_traced(layout.size(), false);
  for (const auto& label : traced) is_traced[layout.index_of(label)] = true;

  const auto dims = layout.dims();
  const auto stride = strides_of(dims);

  std::vector<int> kept, gone;
  for (int j = 0; j < layout.size(); ++j) (is_traced[j] ? gone : kept).push_back(j);

  int kept_dim = 1, gone_dim = 1;
  for (int j : kept) kept_dim *= dims[j];
  for (int j : gone) gone_dim *= dims[j];

  // Source offsets for every kept and traced multi-index.
  std::vector<int> kept_offset(kept_dim), gone_offset(gone_dim);
  for (int r = 0, count = static_cast<int>(kept.size()); r < kept_dim; ++r) {
    int rem = r, off = 0;
    for (int a = count - 1; a >= 0; --a) {
      const int j = kept[a];
      off += (rem % dims[j]) * stride[j];
      rem /= dims[j];
    }
    kept_offset[r] = off;
  }
  for (int t = 0, count = static_cast<int>(gone.size()); t < gone_dim; ++t) {
    int rem = t, off = 0;
    for (int a = count - 1; a >= 0; --a) {
      const int j = gone[a];
      off += (rem % dims[j]) * stride[j];
      rem /= dims[j];
    }
    gone_offset[t] = off;
  }

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (int r = 0; r < kept_dim; ++r)
    for (int c = 0; c < kept_dim; ++c) {
      Complex sum = 0.0;
      for (int t = 0; t < gone_dim; ++t)
        sum += m(kept_offset[r] + gone_offset[t], kept_offset[c] + gone_offset[t]);
      out(r, c) = sum;
    }
  return out;
}

Matrix partial_transpose(const Matrix& m, const SystemLayout& layout,
                         const std::string& label) {
  check_shape(m, layout, "partial_transpose");
  const int target = layout.index_of(label);
  const auto dims = layout.dims();
  const auto stride = strides_of(dims);
  const int d_t = dims[target];
  const int s_t = stride[target];
  const int total = layout.total_dim();

  Matrix out(total, total);
  for (int r = 0; r < total; ++r) {
    const int ri = (r / s_t) % d_t;
    const int r_base = r - ri * s_t;
    for (int c = 0; c < total; ++c) {
      const int ci = (c / s_t) % d_t;
      const int c_base = c - ci * s_t;
      out(r_base + ci * s_t, c_base + ri * s_t) = m(r, c);
    }
  }
  return out;
}

Matrix permute_systems(const Matrix& m, const SystemLayout& layout,
                       const std::vector<std::string>& order) {
  check_shape(m, layout, "permute_systems");
  if (static_cast<int>(order.size()) != layout.size())
    throw std::invalid_argument("permute_systems: order must list every label once");

  const auto dims = layout.dims();
  const auto src_stride = strides_of(dims);

  std::vector<int> perm(order.size());  // position in source for each target slot
  std::vector<bool> used(layout.size(), false);
  std::vector<int> new_dims(order.size());
  for (size_t a = 0; a < order.size(); ++a) {
    const int j = layout.index_of(order[a]);
    if (used[j])
      throw std::invalid_argument("permute_systems: label '" + order[a] + "' repeated");
    used[j] = true;
    perm[a] = j;
    new_dims[a] = dims[j];
  }
  const auto dst_stride = strides_of(new_dims);

  // index_map[src] = dst for composite indices.
  const int total = layout.total_dim();
  std::vector<int> index_map(total);
  for (int idx = 0; idx < total; ++idx) {
    int dst = 0;
    for (size_t a = 0; a < perm.size(); ++a) {
      const int j = perm[a];
      dst += ((idx / src_stride[j]) % dims[j]) * dst_stride[a];
    }
    index_map[idx] = dst;
  }

  Matrix out(total, total);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c) out(index_map[r], index_map[c]) = m(r, c);
  return out;
}

}  // namespace vcomb
