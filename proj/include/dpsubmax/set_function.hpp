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
#include <atomic>
#include <cmath>
#include <memory>
#include <variant>
#include <vector>

#include "dpsubmax/common.hpp"
#include "dpsubmax/ground_set.hpp"

namespace dpsubmax {

// Query-complexity accounting. The counter is the only mutable state of a
// function object; copies of a function share it, neighbors get a fresh one.
class EvalCounter {
 public:
  EvalCounter() : state_(std::make_shared<State>()) {}

  void tick() const {
    const uint64_t n = state_->count.fetch_add(1, std::memory_order_relaxed);
    const uint64_t budget = state_->budget.load(std::memory_order_relaxed);
    if (budget != 0 && n + 1 > budget) {
      throw CapabilityError("evaluation budget exceeded (" +
                            std::to_string(budget) + ")");
    }
  }

  uint64_t count() const {
    return state_->count.load(std::memory_order_relaxed);
  }
  void reset() const { state_->count.store(0, std::memory_order_relaxed); }

  // budget == 0 means unlimited.
  void set_budget(uint64_t budget) const {
    state_->budget.store(budget, std::memory_order_relaxed);
  }

 private:
  struct State {
    std::atomic<uint64_t> count{0};
    std::atomic<uint64_t> budget{0};
  };
  std::shared_ptr<State> state_;
};

// ---------------------------------------------------------------------------
// Records. One record is the private contribution of one individual.

// One right-vertex of a bipartite graph: the set of ground elements it is
// adjacent to.
struct CoverageRecord {
  Mask incident = 0;
};

// One client: a similarity (or weight) value per ground element, in [0,1].
struct RowRecord {
  std::vector<double> values;
};

// One right-vertex with a separate adjacency per topic.
struct TopicCoverageRecord {
  std::vector<Mask> incident;  // size k
};

// One client with a separate row per topic.
struct TopicRowRecord {
  std::vector<std::vector<double>> values;  // k rows of ground-set length
};

using Record =
    std::variant<CoverageRecord, RowRecord, TopicCoverageRecord, TopicRowRecord>;

enum class Schema {
  kCoverage,       // CoverageRecord
  kRow,            // RowRecord
  kTopicCoverage,  // TopicCoverageRecord
  kTopicRow,       // TopicRowRecord
};

// A dataset is an ordered list of records plus the generative parameters
// needed to redraw a single record when forming a neighboring dataset.
struct Dataset {
  Schema schema = Schema::kCoverage;
  int ground_size = 0;
  int topics = 1;     // k; 1 for plain submodular schemas
  int max_degree = 0; // coverage schemas: degree bound for redrawn records
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
};

namespace detail {

inline Mask random_edge_set(int ground_size, int max_degree, Rng& rng) {
  const int degree =
      max_degree == 0 ? 0
                      : static_cast<int>(uniform_index(
                            rng, static_cast<std::size_t>(max_degree) + 1));
  std::vector<int> pool(static_cast<std::size_t>(ground_size));
  for (int i = 0; i < ground_size; ++i) pool[static_cast<std::size_t>(i)] = i;
  fisher_yates_shuffle(pool, rng);
  Mask m = 0;
  for (int i = 0; i < degree && i < ground_size; ++i) {
    m = mask_with(m, pool[static_cast<std::size_t>(i)]);
  }
  return m;
}

inline std::vector<double> random_row(int ground_size, Rng& rng) {
  std::vector<double> row(static_cast<std::size_t>(ground_size));
  for (auto& v : row) v = uniform_unit(rng);
  return row;
}

inline Record draw_record(const Dataset& d, Rng& rng) {
  switch (d.schema) {
    case Schema::kCoverage:
      return CoverageRecord{random_edge_set(d.ground_size, d.max_degree, rng)};
    case Schema::kRow:
      return RowRecord{random_row(d.ground_size, rng)};
    case Schema::kTopicCoverage: {
      TopicCoverageRecord r;
      r.incident.reserve(static_cast<std::size_t>(d.topics));
      for (int t = 0; t < d.topics; ++t) {
        r.incident.push_back(random_edge_set(d.ground_size, d.max_degree, rng));
      }
      return r;
    }
    case Schema::kTopicRow: {
      TopicRowRecord r;
      r.values.reserve(static_cast<std::size_t>(d.topics));
      for (int t = 0; t < d.topics; ++t) {
        r.values.push_back(random_row(d.ground_size, rng));
      }
      return r;
    }
  }
  throw InvariantError("draw_record: unknown schema");
}

}  // namespace detail

// Returns a dataset identical to d except the record at `index` is replaced
// by a freshly drawn record of the same schema.
inline Dataset make_neighbor(const Dataset& d, std::size_t index, Rng& rng) {
  check_input(index < d.records.size(), "make_neighbor: index out of range");
  Dataset out = d;
  out.records[index] = detail::draw_record(d, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Monotone submodular objectives over a sensitive dataset, normalized to
// [0,1] by a public constant, with a declared sensitivity bound.

enum class Family {
  kCoverage,         // F(S) = |N(S)| / |V|
  kFacilityLocation, // F(S) = (1/n) sum_c max_{e in S} sim_c(e)
  kCppAverage,       // F(S) = (1/n) sum_i min(1, <w_i, 1_S>)
};

class SetFunction {
 public:
  SetFunction(GroundSet ground, Dataset data, Family family,
              double sensitivity)
      : ground_(std::move(ground)),
        data_(std::move(data)),
        family_(family),
        sensitivity_(sensitivity) {
    check_input(data_.ground_size == ground_.size(),
                "dataset ground size mismatch");
    check_input(sensitivity_ >= 0.0, "sensitivity must be nonnegative");
    norm_ = data_.records.empty()
                ? 1.0
                : 1.0 / static_cast<double>(data_.records.size());
  }

  // Bipartite coverage. Records are right-vertex edge sets; the public
  // normalization constant is |V|, and one record moves the count by at
  // most one, so the declared sensitivity is 1/|V|.
  static SetFunction coverage(GroundSet ground, Dataset data) {
    check_input(data.schema == Schema::kCoverage, "coverage: wrong schema");
    const double n = static_cast<double>(data.records.size());
    return SetFunction(std::move(ground), std::move(data), Family::kCoverage,
                       n > 0 ? 1.0 / n : 0.0);
  }

  // Facility location with per-client similarity rows in [0,1].
  static SetFunction facility_location(GroundSet ground, Dataset data) {
    check_input(data.schema == Schema::kRow, "facility: wrong schema");
    const double n = static_cast<double>(data.records.size());
    return SetFunction(std::move(ground), std::move(data),
                       Family::kFacilityLocation, n > 0 ? 1.0 / n : 0.0);
  }

  // Average of per-individual budget-additive valuations
  // F_i(S) = min(1, sum_{e in S} w_i(e)), each monotone submodular into
  // [0,1], so the average is 1/n-sensitive.
  static SetFunction cpp_average(GroundSet ground, Dataset data) {
    check_input(data.schema == Schema::kRow, "cpp_average: wrong schema");
    const double n = static_cast<double>(data.records.size());
    return SetFunction(std::move(ground), std::move(data), Family::kCppAverage,
                       n > 0 ? 1.0 / n : 0.0);
  }

  // Same family and ground set over a neighboring dataset (fresh counter).
  SetFunction with_dataset(Dataset data) const {
    return SetFunction(ground_, std::move(data), family_, sensitivity_);
  }

  const GroundSet& ground() const { return ground_; }
  const Dataset& dataset() const { return data_; }
  Family family() const { return family_; }
  double sensitivity() const { return sensitivity_; }
  int n() const { return ground_.size(); }
  const EvalCounter& counter() const { return counter_; }

  double evaluate(Mask s) const {
    check_input((s & ~ground_.all()) == 0, "evaluate: unknown element in set");
    counter_.tick();
    return value_of(s);
  }

  double evaluate(const std::vector<std::string>& ids) const {
    return evaluate(ground_.mask_of(ids));
  }

  // F(S + e) - F(S); nonnegative for these monotone families.
  double marginal_gain(Mask s, int e) const {
    check_input(e >= 0 && e < ground_.size(), "marginal_gain: bad element");
    check_input(!mask_contains(s, e), "marginal_gain: element already in set");
    return evaluate(mask_with(s, e)) - evaluate(s);
  }

 private:
  double value_of(Mask s) const {
    switch (family_) {
      case Family::kCoverage: {
        int covered = 0;
        for (const auto& rec : data_.records) {
          if ((std::get<CoverageRecord>(rec).incident & s) != 0) ++covered;
        }
        return norm_ * covered;
      }
      case Family::kFacilityLocation: {
        double total = 0.0;
        for (const auto& rec : data_.records) {
          const auto& row = std::get<RowRecord>(rec).values;
          double best = 0.0;
          for_each_element(s, [&](int e) {
            best = std::max(best, row[static_cast<std::size_t>(e)]);
          });
          total += best;
        }
        return norm_ * total;
      }
      case Family::kCppAverage: {
        double total = 0.0;
        for (const auto& rec : data_.records) {
          const auto& row = std::get<RowRecord>(rec).values;
          double sum = 0.0;
          for_each_element(s, [&](int e) {
            sum += row[static_cast<std::size_t>(e)];
          });
          total += std::min(1.0, sum);
        }
        return norm_ * total;
      }
    }
    throw InvariantError("evaluate: unknown family");
  }

  GroundSet ground_;
  Dataset data_;
  Family family_;
  double sensitivity_;
  double norm_ = 1.0;
  EvalCounter counter_;
};

// ---------------------------------------------------------------------------
// Exhaustive property checks (desk scale).

inline constexpr int kEnumerationCap = 20;

// max over sampled neighbors and all subsets of |F_D(S) - F_D'(S)|.
// Must come out at or below the declared sensitivity.
inline double measure_sensitivity(const SetFunction& f, int trials, Rng& rng) {
  const int n = f.n();
  check_capability(n <= 15, "measure_sensitivity: ground set too large");
  check_input(trials >= 1, "measure_sensitivity: trials must be >= 1");
  check_input(f.dataset().size() > 0, "measure_sensitivity: empty dataset");
  const Mask all = full_mask(n);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t index = uniform_index(rng, f.dataset().size());
    const SetFunction g = f.with_dataset(make_neighbor(f.dataset(), index, rng));
    for (Mask s = 0; s <= all; ++s) {
      worst = std::max(worst, std::abs(f.evaluate(s) - g.evaluate(s)));
    }
  }
  return worst;
}

// F(S) <= F(S + e) for every S and e outside S.
template <typename ValueFn>
bool check_monotone(int n, ValueFn&& value, double tol = 1e-12) {
  check_capability(n <= kEnumerationCap, "check_monotone: too many elements");
  const Mask all = full_mask(n);
  for (Mask s = 0; s <= all; ++s) {
    const double base = value(s);
    for (int e = 0; e < n; ++e) {
      if (mask_contains(s, e)) continue;
      if (value(mask_with(s, e)) < base - tol) return false;
    }
    if (s == all) break;
  }
  return true;
}

// Diminishing returns over every (S, T, e) with S subset of T, e outside T.
template <typename ValueFn>
bool check_submodular(int n, ValueFn&& value, double tol = 1e-12) {
  check_capability(n <= 16, "check_submodular: too many elements");
  const Mask all = full_mask(n);
  // Memoized table: the triple loop revisits values heavily.
  std::vector<double> table(static_cast<std::size_t>(all) + 1);
  for (Mask s = 0; s <= all; ++s) {
    table[s] = value(s);
    if (s == all) break;
  }
  for (Mask t = 0; t <= all; ++t) {
    for (int e = 0; e < n; ++e) {
      if (mask_contains(t, e)) continue;
      const double gain_t = table[mask_with(t, e)] - table[t];
      // All S subset of T via submask enumeration.
      Mask s = t;
      while (true) {
        const double gain_s = table[mask_with(s, e)] - table[s];
        if (gain_s < gain_t - tol) return false;
        if (s == 0) break;
        s = (s - 1) & t;
      }
    }
    if (t == all) break;
  }
  return true;
}

}  // namespace dpsubmax
