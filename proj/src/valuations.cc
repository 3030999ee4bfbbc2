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

#include "seqauction/valuations.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace seqauction {

int CountItems(ItemSet s) { return std::popcount(s); }

std::string KindName(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kAdditive:
      return "additive";
    case ValuationKind::kUnitDemand:
      return "unit_demand";
    case ValuationKind::kUniformSubmodular:
      return "uniform_submodular";
    case ValuationKind::kTable:
      return "table";
    case ValuationKind::kCoverage:
      return "coverage";
  }
  return "unknown";
}

Valuation Valuation::Additive(std::vector<Money> item_values) {
  Valuation v(ValuationKind::kAdditive, static_cast<int>(item_values.size()));
  v.values_ = std::move(item_values);
  return v;
}

Valuation Valuation::UnitDemand(std::vector<Money> item_values) {
  Valuation v(ValuationKind::kUnitDemand, static_cast<int>(item_values.size()));
  v.values_ = std::move(item_values);
  return v;
}

Valuation Valuation::UniformSubmodular(int num_items, std::vector<Money> marginals) {
  for (size_t c = 1; c < marginals.size(); ++c) {
    if (marginals[c] > marginals[c - 1]) {
      throw std::invalid_argument("uniform_submodular marginals must be non-increasing");
    }
  }
  Valuation v(ValuationKind::kUniformSubmodular, num_items);
  v.values_ = std::move(marginals);
  return v;
}

Valuation Valuation::Table(int num_items, std::vector<std::pair<ItemSet, Money>> entries) {
  Valuation v(ValuationKind::kTable, num_items);
  ItemSet universe = num_items >= 32 ? ~ItemSet{0} : (ItemSet{1} << num_items) - 1;
  for (const auto& [s, value] : entries) {
    if (s & ~universe) throw std::out_of_range("table entry names an unknown item");
  }
  v.entries_ = std::move(entries);
  return v;
}

Valuation Valuation::Coverage(std::vector<Money> element_weights,
                              std::vector<std::vector<int>> covers) {
  Valuation v(ValuationKind::kCoverage, static_cast<int>(covers.size()));
  for (const Money& w : element_weights) {
    if (w < 0) throw std::invalid_argument("coverage weights must be nonnegative");
  }
  for (const auto& c : covers) {
    for (int e : c) {
      if (e < 0 || e >= static_cast<int>(element_weights.size())) {
        throw std::out_of_range("coverage item names an unknown element");
      }
    }
  }
  v.values_ = std::move(element_weights);
  v.covers_ = std::move(covers);
  return v;
}

Money Valuation::Value(ItemSet s) const {
  if (num_items_ < 32 && (s >> num_items_) != 0) {
    throw std::out_of_range("bundle names an unknown item");
  }
  Money total = 0;
  switch (kind_) {
    case ValuationKind::kAdditive:
      for (int j = 0; j < num_items_; ++j) {
        if (Contains(s, j)) total += values_[j];
      }
      break;
    case ValuationKind::kUnitDemand:
      for (int j = 0; j < num_items_; ++j) {
        if (Contains(s, j) && values_[j] > total) total = values_[j];
      }
      break;
    case ValuationKind::kUniformSubmodular: {
      int c = std::min<int>(CountItems(s), static_cast<int>(values_.size()));
      for (int k = 0; k < c; ++k) total += values_[k];
      break;
    }
    case ValuationKind::kTable:
      for (const auto& [t, value] : entries_) {
        if ((t & ~s) == 0 && value > total) total = value;
      }
      break;
    case ValuationKind::kCoverage: {
      std::vector<bool> hit(values_.size(), false);
      for (int j = 0; j < num_items_; ++j) {
        if (!Contains(s, j)) continue;
        for (int e : covers_[j]) {
          if (!hit[e]) {
            hit[e] = true;
            total += values_[e];
          }
        }
      }
      break;
    }
  }
  return total;
}

Money Valuation::Marginal(ItemSet s, int j) const {
  if (Contains(s, j)) throw std::invalid_argument("marginal: item already in bundle");
  return Value(s | Singleton(j)) - Value(s);
}

bool Valuation::operator==(const Valuation& other) const {
  return kind_ == other.kind_ && num_items_ == other.num_items_ && values_ == other.values_ &&
         entries_ == other.entries_ && covers_ == other.covers_;
}

namespace {

void RequireScannable(int m) {
  if (m < 0 || m > 15) throw std::invalid_argument("exhaustive scan needs m <= 15");
}

}  // namespace

bool CheckMonotone(const Valuation& v, int m) {
  RequireScannable(m);
  const ItemSet full = (ItemSet{1} << m) - 1;
  std::vector<Money> value(size_t{1} << m);
  for (ItemSet s = 0; s <= full; ++s) value[s] = v.Value(s);
  for (ItemSet s = 0; s <= full; ++s) {
    if (value[s] < 0) return false;
    for (int j = 0; j < m; ++j) {
      if (!Contains(s, j) && value[s | Singleton(j)] < value[s]) return false;
    }
  }
  return true;
}

bool CheckSubmodular(const Valuation& v, int m) {
  RequireScannable(m);
  const ItemSet full = (ItemSet{1} << m) - 1;
  std::vector<Money> value(size_t{1} << m);
  for (ItemSet s = 0; s <= full; ++s) value[s] = v.Value(s);
  // Diminishing marginals over one-item extensions imply it for all S within T.
  for (ItemSet s = 0; s <= full; ++s) {
    for (int j = 0; j < m; ++j) {
      if (Contains(s, j)) continue;
      Money mj = value[s | Singleton(j)] - value[s];
      for (int k = 0; k < m; ++k) {
        if (k == j || Contains(s, k)) continue;
        ItemSet t = s | Singleton(k);
        if (value[t | Singleton(j)] - value[t] > mj) return false;
      }
    }
  }
  return true;
}

ItemSet Allocation::BundleOf(int player) const {
  ItemSet s = 0;
  for (size_t j = 0; j < owner.size(); ++j) {
    if (owner[j] == player) s |= Singleton(static_cast<int>(j));
  }
  return s;
}

Money Welfare(const std::vector<Valuation>& players, const Allocation& alloc) {
  Money total = 0;
  for (size_t i = 0; i < players.size(); ++i) {
    total += players[i].Value(alloc.BundleOf(static_cast<int>(i)));
  }
  return total;
}

OptimalAllocation BruteForceOptimalAllocation(const std::vector<Valuation>& players,
                                              ItemSet items) {
  const int n = static_cast<int>(players.size());
  if (n == 0) throw std::invalid_argument("no players");
  const int m = players.front().num_items();
  std::vector<int> sold;
  for (int j = 0; j < m; ++j) {
    if (Contains(items, j)) sold.push_back(j);
  }
  double count = 1;
  for (size_t k = 0; k < sold.size(); ++k) count *= n;
  if (count > kMaxBruteForceAllocations) {
    throw std::length_error("brute force allocation: n^m exceeds the enumeration cap");
  }

  // Odometer over owner vectors in lexicographic order; strict improvement
  // keeps the first maximizer.
  std::vector<int> choice(sold.size(), 0);
  std::vector<ItemSet> bundles(n, 0);
  OptimalAllocation best;
  best.allocation.owner.assign(m, -1);
  bool have_best = false;
  while (true) {
    std::fill(bundles.begin(), bundles.end(), 0);
    for (size_t k = 0; k < sold.size(); ++k) bundles[choice[k]] |= Singleton(sold[k]);
    Money w = 0;
    for (int i = 0; i < n; ++i) w += players[i].Value(bundles[i]);
    if (!have_best || w > best.welfare) {
      have_best = true;
      best.welfare = w;
      for (size_t k = 0; k < sold.size(); ++k) best.allocation.owner[sold[k]] = choice[k];
    }
    int pos = static_cast<int>(sold.size()) - 1;
    while (pos >= 0 && choice[pos] == n - 1) choice[pos--] = 0;
    if (pos < 0) break;
    ++choice[pos];
  }
  return best;
}

Money OptimalMatchingValue(const std::vector<Valuation>& players, ItemSet items) {
  // Hungarian method on a square cost matrix (cost = -weight, padded with 0).
  std::vector<int> cols;
  const int m = players.empty() ? 0 : players.front().num_items();
  for (int j = 0; j < m; ++j) {
    if (Contains(items, j)) cols.push_back(j);
  }
  const int n = static_cast<int>(std::max(players.size(), cols.size()));
  if (n == 0) return 0;
  std::vector<std::vector<Money>> cost(n + 1, std::vector<Money>(n + 1, 0));
  for (size_t i = 0; i < players.size(); ++i) {
    for (size_t c = 0; c < cols.size(); ++c) {
      cost[i + 1][c + 1] = -players[i].SingleValue(cols[c]);
    }
  }
  std::vector<Money> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<Money> minv(n + 1);
    std::vector<bool> has_min(n + 1, false), used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      Money delta;
      bool has_delta = false;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Money cur = cost[i0][j] - u[i0] - v[j];
        if (!has_min[j] || cur < minv[j]) {
          minv[j] = cur;
          has_min[j] = true;
          way[j] = j0;
        }
        if (!has_delta || minv[j] < delta) {
          delta = minv[j];
          has_delta = true;
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  Money total = 0;
  for (int j = 1; j <= n; ++j) total -= cost[p[j]][j];
  return total;
}

}  // namespace seqauction
