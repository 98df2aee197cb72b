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

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dpsubmax {

// Error taxonomy, mapped onto CLI exit codes (input 3, capability 2,
// invariant 4).

// Caller passed something malformed or out of range.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// The request is well-formed but beyond what this desk-scale library will
// enumerate (exponential state spaces, evaluation budgets).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

// An internal contract broke; indicates a bug, not a user error.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what)
      : std::runtime_error(what) {}
};

inline void check_input(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}
inline void check_capability(bool ok, const std::string& what) {
  if (!ok) throw CapabilityError(what);
}
inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

// ---------------------------------------------------------------------------
// Randomness. All algorithms take an explicit engine (or a seed from which
// engines are derived), so every run is reproducible bit-for-bit.
using Rng = std::mt19937_64;

// splitmix64 step; used to whiten seeds and derive per-stream seeds.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return mix64(base ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(uint64_t seed) { return Rng(mix64(seed)); }

// Uniform double in [0, 1) from the high 53 bits. Avoids the
// implementation-defined std::uniform_real_distribution so that seeded
// runs are portable across standard libraries.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n) by rejection (no modulo bias).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  check_input(n > 0, "uniform_index: empty range");
  const uint64_t bound = n;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_index(rng, i)]);
  }
}

// ---------------------------------------------------------------------------
// Element subsets as bitmasks over the ground-set index order. Desk-scale
// enumeration never exceeds 63 elements.
using Mask = uint64_t;

inline constexpr int kMaxMaskElements = 63;

inline bool mask_contains(Mask s, int e) { return (s >> e) & 1ULL; }
inline Mask mask_with(Mask s, int e) { return s | (Mask{1} << e); }
inline Mask mask_without(Mask s, int e) { return s & ~(Mask{1} << e); }
inline Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}
inline int mask_size(Mask s) { return std::popcount(s); }

// Calls fn(e) for each element of s in increasing index order.
template <typename Fn>
void for_each_element(Mask s, Fn&& fn) {
  while (s != 0) {
    const int e = std::countr_zero(s);
    fn(e);
    s &= s - 1;
  }
}

inline std::vector<int> mask_elements(Mask s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(mask_size(s)));
  for_each_element(s, [&](int e) { out.push_back(e); });
  return out;
}

}  // namespace dpsubmax
