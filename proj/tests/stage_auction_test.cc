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

#include "seqauction/stage_auction.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "grid_oracle.hpp"
#include "test_util.hpp"

namespace seqauction {
namespace {

using testing::FixA;
using testing::FixB;
using testing::FixC;
using testing::Matrix;
using testing::Q;

TEST(BidTest, OrderUsesPlusFlagOnTies) {
  EXPECT_LT((Bid{Q(1), false}), (Bid{Q(1), true}));
  EXPECT_LT((Bid{Q(1), true}), (Bid{Q(2), false}));
  EXPECT_EQ((Bid{Q(3), true}), (Bid{Q(3), true}));
}

TEST(ResolveStageTest, TiesGoToLowestIndex) {
  auto o = ResolveStage({{Q(2), false}, {Q(2), false}, {Q(1), true}}, PriceFormat::kFirst);
  EXPECT_EQ(o.winner, 0);
  EXPECT_EQ(o.price, Q(2));
  o = ResolveStage({{Q(2), false}, {Q(2), true}, {Q(1), true}}, PriceFormat::kSecond);
  EXPECT_EQ(o.winner, 1);
  EXPECT_EQ(o.price, Q(2));
}

TEST(NormalizeTest, Fixtures) {
  EXPECT_EQ(Normalize(FixA()), FixA());
  EXPECT_EQ(Normalize(FixB()), Matrix({{1, 0}, {0, 4}}));
  EXPECT_EQ(Normalize(Matrix({{3, 3}, {1, 2}})), Matrix({{0, 0}, {0, 1}}));
}

TEST(ToxicTest, Fixtures) {
  EXPECT_TRUE(IsToxic(FixC()));
  EXPECT_FALSE(IsToxic(FixA()));
  EXPECT_FALSE(IsToxic(FixB()));
}

TEST(OverbiddingGraphTest, Fixtures) {
  auto g = BuildOverbiddingGraph(FixB(), Q(0));
  EXPECT_TRUE(g.edge[0][1]);
  EXPECT_TRUE(g.edge[1][0]);
  g = BuildOverbiddingGraph(FixB(), Q(1));
  EXPECT_TRUE(g.edge[0][1]);
  EXPECT_FALSE(g.edge[1][0]);
  g = BuildOverbiddingGraph(FixA(), Q(5));
  for (const auto& row : g.edge) {
    for (bool e : row) EXPECT_FALSE(e);
  }
}

TEST(TauTest, Fixtures) {
  EXPECT_EQ(TauThresholds(FixA()).tau, (std::vector<Money>{Q(3), Q(3), Q(2)}));
  EXPECT_EQ(TauThresholds(FixB()).tau, (std::vector<Money>{Q(1), Q(1)}));
  EXPECT_EQ(TauThresholds(FixC()).tau, (std::vector<Money>{Q(0), Q(0)}));
}

// Grid elimination approximates the surviving range [0, tau): on a grid of
// step 1/s the largest survivor lands within one step of s * tau.
TEST(TauTest, MatchesGridEliminationOnFixtures) {
  for (long scale : {2L, 4L}) {
    for (const auto& m : {FixA(), FixB()}) {
      testing::IntMatrix iv;
      for (const auto& row : m.v) {
        std::vector<long> r;
        for (const auto& x : row) r.push_back(x.get_num().get_si() * scale);
        iv.push_back(r);
      }
      auto survivors = testing::GridEliminationMax(iv, 6 * scale);
      auto tau = TauThresholds(m).tau;
      for (int i = 0; i < m.n(); ++i) {
        long t = tau[i].get_num().get_si() * scale;
        EXPECT_LE(survivors[i], t) << "player " << i << " scale " << scale;
        EXPECT_GE(survivors[i], t - 1) << "player " << i << " scale " << scale;
      }
    }
  }
}

TEST(CanonicalTest, Fixtures) {
  auto a = CanonicalEquilibrium(FixA(), PriceFormat::kFirst);
  EXPECT_EQ(a.outcome.winner, 0);
  EXPECT_EQ(a.outcome.price, Q(3));
  EXPECT_EQ(a.supporter, 1);
  auto b = CanonicalEquilibrium(FixB(), PriceFormat::kFirst);
  EXPECT_EQ(b.outcome.winner, 1);
  EXPECT_EQ(b.outcome.price, Q(1));
  EXPECT_EQ(b.supporter, 0);
  auto c = CanonicalEquilibrium(FixC(), PriceFormat::kFirst);
  EXPECT_EQ(c.outcome.winner, 0);
  EXPECT_EQ(c.outcome.price, Q(0));
  for (const Bid& bid : c.bids) EXPECT_EQ(bid, Bid{});
}

TEST(AscendingTest, FixBTrace) {
  auto r = AscendingEquilibrium(FixB(), Q(1, 2));
  std::vector<AscendingState> want{{0, 1, Q(0)},    {1, 0, Q(0)},    {0, 1, Q(1, 2)},
                                   {1, 0, Q(1, 2)}, {0, 1, Q(1)},    {1, 0, Q(1)}};
  EXPECT_EQ(r.trace, want);
  EXPECT_EQ(r.equilibrium.outcome.winner, 1);
  EXPECT_EQ(r.equilibrium.outcome.price, Q(1));
}

TEST(AscendingTest, ToxicAndErrors) {
  auto r = AscendingEquilibrium(FixC(), Q(1));
  EXPECT_TRUE(r.toxic);
  EXPECT_EQ(r.equilibrium.outcome.winner, 0);
  EXPECT_THROW(AscendingEquilibrium(FixB(), Q(0)), std::invalid_argument);
  EXPECT_THROW(AscendingEquilibrium(FixB(), Q(-1)), std::invalid_argument);
}

TEST(AscendingTest, FixAUnitStep) {
  auto r = AscendingEquilibrium(FixA(), Q(1));
  EXPECT_EQ(r.equilibrium.outcome.winner, 0);
  EXPECT_LE(r.equilibrium.outcome.price, Q(5));
  EXPECT_TRUE(VerifyStageNash(FixA(), r.equilibrium.bids, PriceFormat::kFirst));
}

TEST(VerifyNashTest, Fixtures) {
  EXPECT_TRUE(VerifyStageNash(FixA(), {{Q(3), true}, {Q(3), false}, {Q(0), false}},
                              PriceFormat::kFirst));
  EXPECT_FALSE(VerifyStageNash(FixA(), {{}, {}, {}}, PriceFormat::kFirst));
  EXPECT_TRUE(VerifyStageNash(FixB(), CanonicalEquilibrium(FixB(), PriceFormat::kFirst).bids,
                              PriceFormat::kFirst));
}

// A lower-index opponent holding x+ can only be beaten by bidding strictly
// more than x; that limit deviation must still count.
TEST(VerifyNashTest, DetectsDeviationAboveLowerIndexPlusBid) {
  auto m = Matrix({{2, 0}, {0, 5}});
  EXPECT_FALSE(VerifyStageNash(m, {{Q(2), true}, {Q(0), false}}, PriceFormat::kFirst));
}

TEST(EnumerateTest, Fixtures) {
  auto a = EnumerateCompatibleOutcomes(FixA());
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].winner, 0);
  EXPECT_EQ(a[0].low, Q(3));
  EXPECT_EQ(a[0].high, Q(3));
  auto b = EnumerateCompatibleOutcomes(FixB());
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].winner, 1);
  EXPECT_EQ(b[0].low, Q(1));
  EXPECT_EQ(b[0].high, Q(1));
  auto c = EnumerateCompatibleOutcomes(FixC());
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].winner, 0);
  EXPECT_TRUE(c[0].toxic);
  EXPECT_EQ(c[0].high, Q(0));
}

TEST(EnvyFreeTest, Fixtures) {
  auto a = CanonicalEquilibrium(FixA(), PriceFormat::kSecond);
  EXPECT_TRUE(IsEnvyFreeSecondPrice(FixA(), a.bids));
  EXPECT_FALSE(IsEnvyFreeSecondPrice(FixA(), {{Q(5), false}, {}, {}}));
  EXPECT_TRUE(IsEnvyFreeSecondPrice(FixC(), {{}, {}}));
  EXPECT_THROW(IsEnvyFreeSecondPrice(FixA(), {{}, {}, {}}), std::invalid_argument);
}

// Property sweeps over random rational matrices.

class StagePropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260501};
};

TEST_F(StagePropertyTest, GraphShrinksAsPriceRises) {
  for (int t = 0; t < 300; ++t) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto m = testing::RandomMatrix(rng, n, 12, 4);
    Money p = Q(static_cast<long>(rng() % 16), 4);
    Money q = p + Q(static_cast<long>(rng() % 8), 4);
    auto gp = BuildOverbiddingGraph(m, p), gq = BuildOverbiddingGraph(m, q);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (gq.edge[i][j]) EXPECT_TRUE(gp.edge[i][j]);
      }
    }
  }
}

TEST_F(StagePropertyTest, RowShiftsDoNotChangeSolutions) {
  for (int t = 0; t < 300; ++t) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto m = testing::RandomMatrix(rng, n, 12, 4);
    auto shifted = m;
    for (auto& row : shifted.v) {
      Money c = Q(static_cast<long>(rng() % 20) - 10, 3);
      for (auto& x : row) x += c;
    }
    auto a = CanonicalEquilibrium(m, PriceFormat::kFirst);
    auto b = CanonicalEquilibrium(shifted, PriceFormat::kFirst);
    auto c = CanonicalEquilibrium(Normalize(m), PriceFormat::kFirst);
    EXPECT_EQ(TauThresholds(m).tau, TauThresholds(shifted).tau);
    EXPECT_EQ(a.outcome.winner, b.outcome.winner);
    EXPECT_EQ(a.outcome.price, b.outcome.price);
    EXPECT_EQ(a.outcome.winner, c.outcome.winner);
    EXPECT_EQ(a.outcome.price, c.outcome.price);
  }
}

TEST_F(StagePropertyTest, TauBetweenZeroAndGamma) {
  for (int t = 0; t < 500; ++t) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto m = testing::RandomMatrix(rng, n, 12, 4);
    auto r = TauThresholds(m);
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(r.tau[i], 0);
      EXPECT_LE(r.tau[i], r.gamma[i]);
    }
    for (size_t k = 1; k < r.removal_order.size(); ++k) {
      EXPECT_LE(r.tau[r.removal_order[k - 1]], r.tau[r.removal_order[k]]);
    }
  }
}

TEST_F(StagePropertyTest, CanonicalIsCompatibleAndBelowTau) {
  for (int t = 0; t < 500; ++t) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto m = testing::RandomMatrix(rng, n, 12, 4);
    auto tau = TauThresholds(m);
    auto eq = CanonicalEquilibrium(m, PriceFormat::kFirst);
    auto outcomes = EnumerateCompatibleOutcomes(m, tau);
    // Leaving the tau range is only allowed when nothing inside it works.
    EXPECT_EQ(eq.compatible, !outcomes.empty());
    if (!eq.compatible) continue;
    bool listed = false;
    for (const auto& c : outcomes) {
      if (c.winner == eq.outcome.winner && c.ContainsPrice(eq.outcome.price)) listed = true;
    }
    EXPECT_TRUE(listed);
    for (int i = 0; i < n; ++i) EXPECT_LE(eq.bids[i].amount, tau.tau[i]);
  }
}

TEST_F(StagePropertyTest, EquilibriaHoldUnderBothFormatsAndAreEnvyFree) {
  for (int t = 0; t < 500; ++t) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto m = testing::RandomMatrix(rng, n, 12, 4);
    auto canon = CanonicalEquilibrium(m, PriceFormat::kFirst);
    auto asc = AscendingEquilibrium(m, Q(1, 8));
    for (const auto* bids : {&canon.bids, &asc.equilibrium.bids}) {
      ASSERT_TRUE(VerifyStageNash(m, *bids, PriceFormat::kFirst));
      ASSERT_TRUE(VerifyStageNash(m, *bids, PriceFormat::kSecond));
      EXPECT_TRUE(IsEnvyFreeSecondPrice(m, *bids));
    }
  }
}

TEST_F(StagePropertyTest, GridSearchContainsCanonicalOutcome) {
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng() % 2);
    auto m = testing::RandomMatrix(rng, n, 3, 1);
    testing::IntMatrix iv;
    for (const auto& row : m.v) {
      std::vector<long> r;
      for (const auto& x : row) r.push_back(x.get_num().get_si() * 4);
      iv.push_back(r);
    }
    auto tau = TauThresholds(m);
    std::vector<long> cap;
    for (const auto& x : tau.tau) cap.push_back(x.get_num().get_si() * 4);
    auto eqs = testing::GridEquilibria(iv, 2, cap, 16);
    auto canon = CanonicalEquilibrium(m, PriceFormat::kFirst);
    if (!canon.compatible) continue;
    long price = canon.outcome.price.get_num().get_si() * 4;
    EXPECT_TRUE(eqs.count({canon.outcome.winner, price}));
  }
}

TEST_F(StagePropertyTest, GridEquilibriaMatchEnumeration) {
  for (int t = 0; t < 80; ++t) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto m = testing::RandomMatrix(rng, n, 3, 1);
    testing::IntMatrix iv;
    for (const auto& row : m.v) {
      std::vector<long> r;
      for (const auto& x : row) r.push_back(x.get_num().get_si() * 4);
      iv.push_back(r);
    }
    auto tau = TauThresholds(m);
    std::vector<long> cap;
    for (const auto& x : tau.tau) cap.push_back(x.get_num().get_si() * 4);
    auto grid = testing::GridEquilibria(iv, 2, cap, 16);
    std::set<std::pair<int, long>> listed;
    for (const auto& c : EnumerateCompatibleOutcomes(m, tau)) {
      for (long p = 0; p <= 12; p += 2) {
        if (c.ContainsPrice(Q(p, 4))) listed.insert({c.winner, p});
      }
    }
    EXPECT_EQ(grid, listed);
  }
}

}  // namespace
}  // namespace seqauction
