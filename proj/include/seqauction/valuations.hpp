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

#ifndef SEQAUCTION_VALUATIONS_HPP_
#define SEQAUCTION_VALUATIONS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seqauction/money.hpp"

namespace seqauction {

// Bundle of items as a bitmask over the item universe (at most 32 items).
using ItemSet = std::uint32_t;

inline ItemSet Singleton(int item) { return ItemSet{1} << item; }
inline bool Contains(ItemSet s, int item) { return (s >> item) & 1u; }
int CountItems(ItemSet s);

enum class ValuationKind { kAdditive, kUnitDemand, kUniformSubmodular, kTable, kCoverage };

std::string KindName(ValuationKind kind);

class Valuation {
 public:
  static Valuation Additive(std::vector<Money> item_values);
  static Valuation UnitDemand(std::vector<Money> item_values);
  // marginals[c] is the value of the (c+1)-th item; must be non-increasing.
  static Valuation UniformSubmodular(int num_items, std::vector<Money> marginals);
  // Value of S is the best recorded bundle contained in S (0 if none).
  static Valuation Table(int num_items, std::vector<std::pair<ItemSet, Money>> entries);
  // Item j covers the elements listed in covers[j]; a bundle is worth the
  // total weight of the elements it covers.
  static Valuation Coverage(std::vector<Money> element_weights,
                            std::vector<std::vector<int>> covers);

  ValuationKind kind() const { return kind_; }
  int num_items() const { return num_items_; }
  const std::vector<Money>& values() const { return values_; }
  const std::vector<std::pair<ItemSet, Money>>& entries() const { return entries_; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }

  // Throws std::out_of_range if s names items outside the universe.
  Money Value(ItemSet s) const;
  // value(s + j) - value(s); throws std::invalid_argument if j is in s.
  Money Marginal(ItemSet s, int j) const;

  // Value of item j alone, used when a unit-demand projection is needed.
  Money SingleValue(int j) const { return Value(Singleton(j)); }

  bool operator==(const Valuation& other) const;

 private:
  Valuation(ValuationKind kind, int num_items) : kind_(kind), num_items_(num_items) {}

  ValuationKind kind_;
  int num_items_;
  std::vector<Money> values_;
  std::vector<std::pair<ItemSet, Money>> entries_;
  std::vector<std::vector<int>> covers_;
};

// Exhaustive checks over all 2^m bundles. Throw std::invalid_argument if m > 15.
bool CheckMonotone(const Valuation& v, int m);
bool CheckSubmodular(const Valuation& v, int m);

// owner[j] is the player holding item j, or -1 when item j is not part of
// the allocation.
struct Allocation {
  std::vector<int> owner;

  ItemSet BundleOf(int player) const;
  bool operator==(const Allocation& other) const = default;
};

Money Welfare(const std::vector<Valuation>& players, const Allocation& alloc);

struct OptimalAllocation {
  Allocation allocation;
  Money welfare;
};

inline constexpr double kMaxBruteForceAllocations = 1e7;

// Maximizes total value over all n^|items| assignments of the given items.
// Ties keep the lexicographically smallest owner vector. Throws
// std::length_error if the assignment count exceeds kMaxBruteForceAllocations.
OptimalAllocation BruteForceOptimalAllocation(const std::vector<Valuation>& players,
                                              ItemSet items);

// Maximum-weight matching between players and items with weight
// v_i({j}); every player gets at most one item.
Money OptimalMatchingValue(const std::vector<Valuation>& players, ItemSet items);

}  // namespace seqauction

#endif  // SEQAUCTION_VALUATIONS_HPP_
