// Copyright 2026 The Authors.
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
#include <unordered_map>
#include <vector>

#include "dpsubmax/common.hpp"

namespace dpsubmax {

// Fixed, ordered universe of elements. Index order is the canonical order
// everywhere: bitmasks, fractional points and covering CSV columns all use it.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    check_input(ids_.size() <= kMaxMaskElements,
                "ground set too large for mask representation");
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      const bool inserted =
          index_.emplace(ids_[i], static_cast<int>(i)).second;
      check_input(inserted, "duplicate element id: " + ids_[i]);
    }
  }

  // n elements named <prefix>1 .. <prefix>n.
  static GroundSet indexed(int n, const std::string& prefix = "e") {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) ids.push_back(prefix + std::to_string(i));
    return GroundSet(std::move(ids));
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int index) const { return ids_.at(index); }
  const std::vector<std::string>& ids() const { return ids_; }

  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    check_input(it != index_.end(), "unknown element id: " + id);
    return it->second;
  }

  bool has(const std::string& id) const { return index_.count(id) != 0; }

  Mask mask_of(const std::vector<std::string>& ids) const {
    Mask m = 0;
    for (const auto& id : ids) m = mask_with(m, index_of(id));
    return m;
  }

  std::vector<std::string> ids_of(Mask m) const {
    std::vector<std::string> out;
    for_each_element(m, [&](int e) {
      check_input(e < size(), "mask element outside ground set");
      out.push_back(ids_[e]);
    });
    return out;
  }

  Mask all() const { return full_mask(size()); }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace dpsubmax
