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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_util.hpp"

namespace seqauction {
namespace {

using testing::Q;

constexpr ItemSet kA = 1, kB = 2;

// Reference optimum by dynamic programming over (player, remaining items).
Money DpOptimum(const std::vector<Valuation>& players, ItemSet items) {
  std::vector<Money> best(size_t{items} + 1, Money(0));
  for (const Valuation& v : players) {
    std::vector<Money> next(best.size(), Money(0));
    for (ItemSet s = 0; s <= items; ++s) {
      if (s & ~items) continue;
      for (ItemSet t = s;; t = (t - 1) & s) {
        next[s] = std::max(next[s], Money(best[s & ~t] + v.Value(t)));
        if (t == 0) break;
      }
    }
    best = std::move(next);
  }
  return best[items];
}

// Unit-demand matching by trying every injective assignment.
Money PermutationMatching(const std::vector<std::vector<Money>>& w) {
  const int n = static_cast<int>(w.size()), m = static_cast<int>(w[0].size());
  std::vector<int> slots(std::max(n, m));
  std::iota(slots.begin(), slots.end(), 0);
  Money best = 0;
  do {
    Money total = 0;
    for (int i = 0; i < n; ++i) {
      if (slots[i] < m) total += w[i][slots[i]];
    }
    best = std::max(best, total);
  } while (std::next_permutation(slots.begin(), slots.end()));
  return best;
}

bool PairwiseSubmodular(const Valuation& v, int m) {
  const ItemSet full = (ItemSet{1} << m) - 1;
  for (ItemSet t = 0; t <= full; ++t) {
    for (ItemSet s = t;; s = (s - 1) & t) {
      for (int j = 0; j < m; ++j) {
        if (!Contains(t, j) && v.Marginal(s, j) < v.Marginal(t, j)) return false;
      }
      if (s == 0) break;
    }
  }
  return true;
}

TEST(ValuationTest, Values) {
  Valuation add = Valuation::Additive({Q(5), Q(5)});
  Valuation unit = Valuation::UnitDemand({Q(4), Q(4)});
  EXPECT_EQ(add.Value(kA | kB), 10);
  EXPECT_EQ(unit.Value(kA | kB), 4);
  EXPECT_EQ(add.Value(0), 0);
  EXPECT_EQ(unit.Value(0), 0);
  EXPECT_EQ(Valuation::UniformSubmodular(2, {Q(3), Q(1)}).Value(0), 0);
  EXPECT_THROW(add.Value(4), std::out_of_range);
}

TEST(ValuationTest, Marginals) {
  EXPECT_EQ(Valuation::UnitDemand({Q(4), Q(4)}).Marginal(kA, 1), 0);
  EXPECT_EQ(Valuation::Additive({Q(5), Q(5)}).Marginal(kA, 1), 5);
  EXPECT_EQ(Valuation::UniformSubmodular(2, {Q(3), Q(1)}).Marginal(kA, 1), 1);
  EXPECT_THROW(Valuation::Additive({Q(5), Q(5)}).Marginal(kA, 0), std::invalid_argument);
}

TEST(ValuationTest, UniformSubmodularCountsOnly) {
  Valuation v = Valuation::UniformSubmodular(4, {Q(5), Q(3), Q(1)});
  EXPECT_EQ(v.Value(0b0101), 8);
  EXPECT_EQ(v.Value(0b1111), 9);
  EXPECT_THROW(Valuation::UniformSubmodular(2, {Q(1), Q(2)}), std::invalid_argument);
}

TEST(ValuationTest, TableUsesFreeDisposal) {
  Valuation t = Valuation::Table(3, {{kA, Q(2)}, {kA | kB, Q(5)}});
  EXPECT_EQ(t.Value(kA | 4), 2);
  EXPECT_EQ(t.Value(kB), 0);
  EXPECT_EQ(t.Value(7), 5);
  EXPECT_THROW(Valuation::Table(1, {{kB, Q(1)}}), std::out_of_range);
}

TEST(ValuationTest, CoverageCountsEachElementOnce) {
  Valuation c = Valuation::Coverage({Q(1), Q(2), Q(4)}, {{0, 1}, {1, 2}, {}});
  EXPECT_EQ(c.Value(kA), 3);
  EXPECT_EQ(c.Value(kA | kB), 7);
  EXPECT_EQ(c.Value(4), 0);
  EXPECT_TRUE(CheckMonotone(c, 3));
  EXPECT_TRUE(CheckSubmodular(c, 3));
  EXPECT_THROW(Valuation::Coverage({Q(1)}, {{1}}), std::out_of_range);
  EXPECT_THROW(Valuation::Coverage({Q(-1)}, {{0}}), std::invalid_argument);
}

TEST(ValuationTest, MonotoneAndSubmodularChecks) {
  EXPECT_TRUE(CheckMonotone(Valuation::Additive({Q(1), Q(0), Q(2)}), 3));
  // Free disposal lifts AB to 2, so a lower recorded AB entry stays monotone.
  Valuation lower = Valuation::Table(2, {{kA, Q(2)}, {kA | kB, Q(1)}});
  EXPECT_EQ(lower.Value(kA | kB), 2);
  EXPECT_TRUE(CheckMonotone(lower, 2));
  EXPECT_TRUE(CheckMonotone(Valuation::UnitDemand({Q(3), Q(7)}), 2));
  EXPECT_TRUE(CheckSubmodular(Valuation::Additive({Q(1), Q(4)}), 2));
  EXPECT_TRUE(CheckSubmodular(Valuation::UnitDemand({Q(1), Q(4), Q(2)}), 3));
  EXPECT_FALSE(CheckSubmodular(Valuation::Table(2, {{kA, Q(1)}, {kB, Q(1)}, {kA | kB, Q(3)}}), 2));
  EXPECT_THROW(CheckMonotone(Valuation::Additive(std::vector<Money>(16, Q(1))), 16),
               std::invalid_argument);
}

TEST(ValuationTest, NegativeValuesAreNotMonotone) {
  EXPECT_FALSE(CheckMonotone(Valuation::Additive({Q(-1)}), 1));
}

TEST(ValuationTest, SubmodularCheckMatchesPairwiseScan) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(0, 6);
  int agreed_false = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<std::pair<ItemSet, Money>> entries;
    for (ItemSet s = 1; s < 8; ++s) entries.push_back({s, Q(d(rng))});
    Valuation v = Valuation::Table(3, entries);
    bool expected = PairwiseSubmodular(v, 3);
    EXPECT_EQ(CheckSubmodular(v, 3), expected);
    agreed_false += !expected;
  }
  EXPECT_GT(agreed_false, 0);
}

TEST(AllocationTest, IntroOptimum) {
  std::vector<Valuation> p = {Valuation::Additive({Q(5), Q(5)}),
                              Valuation::UnitDemand({Q(4), Q(4)})};
  OptimalAllocation o = BruteForceOptimalAllocation(p, kA | kB);
  EXPECT_EQ(o.welfare, 10);
  EXPECT_EQ(o.allocation.owner, (std::vector<int>{0, 0}));
  EXPECT_EQ(Welfare(p, o.allocation), 10);
}

TEST(AllocationTest, SinglePlayerTakesEverything) {
  OptimalAllocation o =
      BruteForceOptimalAllocation({Valuation::UnitDemand({Q(1), Q(2), Q(0)})}, 0b111);
  EXPECT_EQ(o.allocation.owner, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(o.welfare, 2);
}

TEST(AllocationTest, OnlyRequestedItemsAreAssigned) {
  std::vector<Valuation> p = {Valuation::Additive({Q(1), Q(2), Q(3)}),
                              Valuation::Additive({Q(3), Q(2), Q(1)})};
  OptimalAllocation o = BruteForceOptimalAllocation(p, 0b101);
  EXPECT_EQ(o.allocation.owner, (std::vector<int>{1, -1, 0}));
  EXPECT_EQ(o.welfare, 6);
  EXPECT_THROW(BruteForceOptimalAllocation({}, 1), std::invalid_argument);
  std::vector<Valuation> many(3, Valuation::Additive(std::vector<Money>(16, Q(1))));
  EXPECT_THROW(BruteForceOptimalAllocation(many, 0xFFFF), std::length_error);
}

TEST(AllocationTest, BruteForceMatchesDp) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(0, 9), kind(0, 3);
  for (int t = 0; t < 150; ++t) {
    const int n = 1 + t % 3, m = 1 + t % 4;
    std::vector<Valuation> players;
    for (int i = 0; i < n; ++i) {
      std::vector<Money> vals(m);
      for (Money& x : vals) x = Q(d(rng));
      switch (kind(rng)) {
        case 0:
          players.push_back(Valuation::Additive(vals));
          break;
        case 1:
          players.push_back(Valuation::UnitDemand(vals));
          break;
        case 2:
          std::sort(vals.rbegin(), vals.rend());
          players.push_back(Valuation::UniformSubmodular(m, vals));
          break;
        default: {
          std::vector<std::pair<ItemSet, Money>> e;
          for (ItemSet s = 1; s < (ItemSet{1} << m); ++s) e.push_back({s, Q(d(rng))});
          players.push_back(Valuation::Table(m, e));
        }
      }
    }
    const ItemSet all = (ItemSet{1} << m) - 1;
    OptimalAllocation o = BruteForceOptimalAllocation(players, all);
    EXPECT_EQ(o.welfare, DpOptimum(players, all));
    EXPECT_EQ(Welfare(players, o.allocation), o.welfare);
  }
}

TEST(MatchingTest, Examples) {
  std::vector<Valuation> p = {Valuation::UnitDemand({Q(5), Q(3)}),
                              Valuation::UnitDemand({Q(4), Q(1)})};
  EXPECT_EQ(OptimalMatchingValue(p, kA | kB), 7);
  EXPECT_EQ(OptimalMatchingValue({Valuation::UnitDemand({Q(5)}), Valuation::UnitDemand({Q(3)})},
                                 kA),
            5);
  EXPECT_EQ(OptimalMatchingValue(p, 0), 0);
}

TEST(MatchingTest, AgreesWithPermutationsAndBruteForce) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> d(0, 7), size(1, 4);
  for (int t = 0; t < 200; ++t) {
    const int n = size(rng), m = size(rng);
    std::vector<Valuation> players;
    std::vector<std::vector<Money>> w(n, std::vector<Money>(m));
    for (int i = 0; i < n; ++i) {
      for (Money& x : w[i]) x = Q(d(rng), 2);
      players.push_back(Valuation::UnitDemand(w[i]));
    }
    const ItemSet all = (ItemSet{1} << m) - 1;
    Money expected = PermutationMatching(w);
    EXPECT_EQ(OptimalMatchingValue(players, all), expected);
    EXPECT_EQ(BruteForceOptimalAllocation(players, all).welfare, expected);
  }
}

}  // namespace
}  // namespace seqauction
