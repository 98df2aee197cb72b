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

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "dpsubmax/common.hpp"
#include "dpsubmax/ground_set.hpp"

namespace dpsubmax {

inline constexpr double kPolytopeTol = 1e-9;

// Immutable matroid oracle over a ground set: uniform, partition or graphic.
class Matroid {
 public:
  enum class Kind { kUniform, kPartition, kGraphic };

  static Matroid uniform(GroundSet ground, int budget) {
    check_input(budget >= 0, "uniform matroid: negative budget");
    Matroid m(std::move(ground), Kind::kUniform);
    m.budget_ = budget;
    m.rank_ = std::min(budget, m.ground_.size());
    return m;
  }

  // blocks[i] lists the element indices of block i; caps[i] its capacity.
  // Blocks must partition the ground set.
  static Matroid partition(GroundSet ground, std::vector<std::vector<int>> blocks,
                           std::vector<int> caps) {
    check_input(blocks.size() == caps.size(),
                "partition matroid: blocks/caps size mismatch");
    Matroid m(std::move(ground), Kind::kPartition);
    m.block_of_.assign(static_cast<std::size_t>(m.ground_.size()), -1);
    m.caps_ = std::move(caps);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      check_input(m.caps_[b] >= 0, "partition matroid: negative capacity");
      int block_size = 0;
      for (int e : blocks[b]) {
        check_input(e >= 0 && e < m.ground_.size(),
                    "partition matroid: element outside ground set");
        check_input(m.block_of_[static_cast<std::size_t>(e)] == -1,
                    "partition matroid: element in two blocks");
        m.block_of_[static_cast<std::size_t>(e)] = static_cast<int>(b);
        ++block_size;
      }
      m.rank_ += std::min(block_size, m.caps_[b]);
    }
    for (int e = 0; e < m.ground_.size(); ++e) {
      check_input(m.block_of_[static_cast<std::size_t>(e)] != -1,
                  "partition matroid: element not covered by any block");
    }
    return m;
  }

  // endpoints[e] = (u, v) of the multigraph edge that element e maps to.
  static Matroid graphic(GroundSet ground, int n_vertices,
                         std::vector<std::pair<int, int>> endpoints) {
    Matroid m(std::move(ground), Kind::kGraphic);
    check_input(static_cast<int>(endpoints.size()) == m.ground_.size(),
                "graphic matroid: one edge per element required");
    check_input(n_vertices >= 0, "graphic matroid: negative vertex count");
    for (const auto& [u, v] : endpoints) {
      check_input(u >= 0 && u < n_vertices && v >= 0 && v < n_vertices,
                  "graphic matroid: edge endpoint out of range");
    }
    m.n_vertices_ = n_vertices;
    m.endpoints_ = std::move(endpoints);
    m.rank_ = m.greedy_rank(m.ground_.all());
    return m;
  }

  Kind kind() const { return kind_; }
  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size(); }
  int rank() const { return rank_; }

  bool is_independent(Mask s) const {
    check_input((s & ~ground_.all()) == 0, "is_independent: set outside E");
    switch (kind_) {
      case Kind::kUniform:
        return mask_size(s) <= budget_;
      case Kind::kPartition: {
        std::vector<int> used(caps_.size(), 0);
        bool ok = true;
        for_each_element(s, [&](int e) {
          const auto b = static_cast<std::size_t>(
              block_of_[static_cast<std::size_t>(e)]);
          if (++used[b] > caps_[b]) ok = false;
        });
        return ok;
      }
      case Kind::kGraphic:
        return forest_size(s) == mask_size(s);
    }
    throw InvariantError("is_independent: unknown kind");
  }

  // Size of a maximum independent subset of s. Greedy is exact on matroids.
  int rank_of(Mask s) const {
    check_input((s & ~ground_.all()) == 0, "rank_of: set outside E");
    switch (kind_) {
      case Kind::kUniform:
        return std::min(mask_size(s), budget_);
      case Kind::kPartition: {
        std::vector<int> used(caps_.size(), 0);
        for_each_element(s, [&](int e) {
          ++used[static_cast<std::size_t>(
              block_of_[static_cast<std::size_t>(e)])];
        });
        int r = 0;
        for (std::size_t b = 0; b < caps_.size(); ++b) {
          r += std::min(used[b], caps_[b]);
        }
        return r;
      }
      case Kind::kGraphic:
        return forest_size(s);
    }
    throw InvariantError("rank_of: unknown kind");
  }

  // For A subset of the base B with A + e independent and e outside A,
  // returns e' in B \ A such that B - e' + e is again a base. Scans B \ A in
  // ground-set order, so transcripts are reproducible. If e is already in
  // B \ A the exchange is the identity.
  int base_exchange(Mask a, Mask b_base, int e) const {
    check_input(e >= 0 && e < n(), "base_exchange: bad element");
    check_input((a & ~b_base) == 0, "base_exchange: A not contained in base");
    check_input(is_independent(b_base) && mask_size(b_base) == rank_,
                "base_exchange: B is not a base");
    check_input(!mask_contains(a, e), "base_exchange: e already in A");
    check_input(is_independent(mask_with(a, e)),
                "base_exchange: A + e not independent");
    if (mask_contains(b_base, e)) return e;
    int found = -1;
    for_each_element(b_base & ~a, [&](int cand) {
      if (found != -1) return;
      const Mask swapped = mask_with(mask_without(b_base, cand), e);
      if (is_independent(swapped)) found = cand;
    });
    check_invariant(found != -1, "base_exchange: no valid exchange element");
    return found;
  }

  // Membership in the matroid polytope {x >= 0 : x(S) <= rank(S) for all S}.
  // Uniform and partition matroids use their closed-form constraint family;
  // the graphic case enumerates subsets (desk scale only).
  bool polytope_contains(const std::vector<double>& x,
                         double tol = kPolytopeTol) const {
    check_input(static_cast<int>(x.size()) == n(),
                "polytope_contains: dimension mismatch");
    for (double v : x) {
      if (!std::isfinite(v)) throw InputError("polytope_contains: non-finite");
      if (v < -tol) return false;
    }
    switch (kind_) {
      case Kind::kUniform: {
        const double cap_e = std::min(1, budget_);
        double sum = 0.0;
        for (double v : x) {
          if (v > cap_e + tol) return false;
          sum += v;
        }
        return sum <= budget_ + tol;
      }
      case Kind::kPartition: {
        std::vector<double> block_sum(caps_.size(), 0.0);
        for (int e = 0; e < n(); ++e) {
          const auto b = static_cast<std::size_t>(
              block_of_[static_cast<std::size_t>(e)]);
          const double cap_e = std::min(1, caps_[b]);
          if (x[static_cast<std::size_t>(e)] > cap_e + tol) return false;
          block_sum[b] += x[static_cast<std::size_t>(e)];
        }
        for (std::size_t b = 0; b < caps_.size(); ++b) {
          if (block_sum[b] > caps_[b] + tol) return false;
        }
        return true;
      }
      case Kind::kGraphic: {
        check_capability(n() <= kMaxMaskElements &&
                             n() <= 20,
                         "polytope_contains: subset enumeration too large");
        const Mask all = ground_.all();
        for (Mask s = 1; s <= all; ++s) {
          double sum = 0.0;
          for_each_element(s, [&](int e) {
            sum += x[static_cast<std::size_t>(e)];
          });
          if (sum > rank_of(s) + tol) return false;
          if (s == all) break;
        }
        return true;
      }
    }
    throw InvariantError("polytope_contains: unknown kind");
  }

  // Shuffle E, greedily keep what stays independent.
  Mask random_base(Rng& rng) const {
    std::vector<int> order(static_cast<std::size_t>(n()));
    std::iota(order.begin(), order.end(), 0);
    fisher_yates_shuffle(order, rng);
    Mask base = 0;
    for (int e : order) {
      const Mask cand = mask_with(base, e);
      if (is_independent(cand)) base = cand;
    }
    check_invariant(mask_size(base) == rank_, "random_base: rank shortfall");
    return base;
  }

  // Deterministic extension of an independent set to a base (ground order).
  Mask extend_to_base(Mask independent) const {
    check_input(is_independent(independent), "extend_to_base: dependent input");
    Mask base = independent;
    for (int e = 0; e < n() && mask_size(base) < rank_; ++e) {
      if (mask_contains(base, e)) continue;
      const Mask cand = mask_with(base, e);
      if (is_independent(cand)) base = cand;
    }
    check_invariant(mask_size(base) == rank_, "extend_to_base: rank shortfall");
    return base;
  }

  // Elements that can be added to `support` while staying independent.
  std::vector<int> addable_elements(Mask support) const {
    std::vector<int> out;
    for (int e = 0; e < n(); ++e) {
      if (mask_contains(support, e)) continue;
      if (is_independent(mask_with(support, e))) out.push_back(e);
    }
    return out;
  }

 private:
  Matroid(GroundSet ground, Kind kind)
      : ground_(std::move(ground)), kind_(kind) {}

  // Union-find forest size of the edge subset s.
  int forest_size(Mask s) const {
    std::vector<int> parent(static_cast<std::size_t>(n_vertices_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] =
            parent[static_cast<std::size_t>(
                parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
      }
      return v;
    };
    int size = 0;
    for_each_element(s, [&](int e) {
      const auto& [u, v] = endpoints_[static_cast<std::size_t>(e)];
      const int ru = find(u);
      const int rv = find(v);
      if (ru != rv) {
        parent[static_cast<std::size_t>(ru)] = rv;
        ++size;
      }
    });
    return size;
  }

  int greedy_rank(Mask s) const {
    Mask kept = 0;
    for_each_element(s, [&](int e) {
      const Mask cand = mask_with(kept, e);
      if (is_independent(cand)) kept = cand;
    });
    return mask_size(kept);
  }

  GroundSet ground_;
  Kind kind_;
  int rank_ = 0;
  // uniform
  int budget_ = 0;
  // partition
  std::vector<int> block_of_;
  std::vector<int> caps_;
  // graphic
  int n_vertices_ = 0;
  std::vector<std::pair<int, int>> endpoints_;
};

}  // namespace dpsubmax
