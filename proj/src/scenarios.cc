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

#include "seqauction/scenarios.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace seqauction {

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("scenario self-check failed: " + what);
}

void AddRounds(AuctionInstance* inst) {
  inst->rounds.clear();
  for (int j = 0; j < inst->m(); ++j) inst->rounds.push_back({j});
}

// Brute-force optimum only when it is cheap; the closed form is used above.
void CheckOptimum(const Scenario& s) {
  double count = 1;
  for (int j = 0; j < s.instance.m(); ++j) count *= s.instance.n();
  if (count > 1e5) return;
  Money opt = BruteForceOptimalAllocation(s.instance.players, s.instance.AllItems()).welfare;
  Require(opt == s.expected_opt, "optimum differs from the closed form");
}

bool InSet(int x, std::initializer_list<int> s) {
  return std::find(s.begin(), s.end(), x) != s.end();
}

}  // namespace

Scenario Figure1(const Money& alpha, const Money& eps) {
  if (!(eps > 0 && eps < alpha)) throw std::invalid_argument("figure1 needs 0 < eps < alpha");
  Scenario s;
  s.name = "figure1";
  s.parameters = {{"alpha", ToString(alpha)}, {"eps", ToString(eps)}};
  AuctionInstance& inst = s.instance;
  inst.player_names = {"a", "b", "c", "d"};
  inst.items = {"A", "B", "C"};
  inst.players = {
      Valuation::UnitDemand({eps, 0, 0}),
      Valuation::UnitDemand({alpha, 0, alpha}),
      Valuation::UnitDemand({0, alpha, alpha}),
      Valuation::UnitDemand({0, alpha - eps, 0}),
  };
  AddRounds(&inst);
  s.expected_welfare = 2 * alpha + eps;
  s.expected_opt = 3 * alpha - eps;
  s.expected_poa = s.expected_opt / s.expected_welfare;
  s.notes = {
      "b gives up A: losing it leaves C uncontested, since c then spends itself on B against d",
      "values reconstructed; the equilibrium is the unique one the enumerator finds"};
  auto solution = std::make_shared<SpeSolution>(SolveSpe(inst));
  GameReport r = Play(*solution);
  Require(r.welfare == s.expected_welfare, "figure1 equilibrium welfare");
  Require(r.allocation == Owners({0, 2, 1}), "figure1 equilibrium allocation");
  s.solution = solution;
  s.profile = ProfileFromSolution(solution);
  CheckOptimum(s);
  return s;
}

Scenario SubmodularUnbounded(int k, const Money& delta, const Money& eps) {
  if (k < 1 || k > 28) throw std::invalid_argument("submodular_unbounded needs 1 <= k <= 28");
  if (!(delta > 0 && eps > 0)) throw std::invalid_argument("delta and eps must be positive");
  const Money half = delta / 2;
  if (4 - half - k * delta <= 0 || 2 - k * half <= 0) {
    throw std::invalid_argument("delta too large for k");
  }
  Scenario s;
  s.name = "submodular_unbounded";
  s.parameters = {{"k", std::to_string(k)}, {"delta", ToString(delta)}, {"eps", ToString(eps)}};
  AuctionInstance& inst = s.instance;
  inst.player_names = {"1", "2", "3", "4"};
  for (int t = 0; t < k; ++t) inst.items.push_back("I" + std::to_string(t + 1));
  const int y = k, z1 = k + 1, z2 = k + 2;
  inst.items.insert(inst.items.end(), {"Y", "Z1", "Z2"});
  const int m = k + 3;
  const Money z_value = 2 - k * half;

  std::vector<Money> p1(m, Money(0)), p2(m, Money(0));
  for (int t = 0; t < k; ++t) {
    p1[t] = 1 + eps;
    p2[t] = 1;
  }
  p1[z1] = z_value;
  p2[z2] = z_value;

  // Player 3: Y covers a base element and e_1..e_k; I_t covers e_t.
  std::vector<Money> w3{4 - half - k * delta};
  std::vector<std::vector<int>> c3(m);
  c3[y].push_back(0);
  for (int t = 0; t < k; ++t) {
    w3.push_back(delta);
    c3[t] = {t + 1};
    c3[y].push_back(t + 1);
  }

  // Player 4: Y covers s_1, s_2 and a private part; Z_r covers s_r and
  // f_t^r; I_t covers f_t^1, f_t^2 and a private g_t.
  std::vector<Money> w4{z_value, z_value, k * delta};
  std::vector<std::vector<int>> c4(m);
  c4[y] = {0, 1, 2};
  c4[z1] = {0};
  c4[z2] = {1};
  for (int t = 0; t < k; ++t) {
    int f1 = static_cast<int>(w4.size());
    w4.insert(w4.end(), {half, half, delta});
    c4[t] = {f1, f1 + 1, f1 + 2};
    c4[z1].push_back(f1);
    c4[z2].push_back(f1 + 1);
  }
  inst.players = {Valuation::Additive(p1), Valuation::Additive(p2),
                  Valuation::Coverage(w3, c3), Valuation::Coverage(w4, c4)};
  AddRounds(&inst);

  SolveOptions options;
  // Later values depend only on how many I items each of 3 and 4 holds and
  // how many went to the additive pair; merging 1 into 0 keeps that.
  options.canonicalize = [k](Owners& o) {
    int sold = 0;
    for (int t = 0; t < k && o[t] >= 0; ++t) {
      if (o[t] == 1) o[t] = 0;
      ++sold;
    }
    std::sort(o.begin(), o.begin() + sold);
  };
  const PriceFormat format = inst.format;
  options.select = [k, delta, format](const Owners& o, int round,
                                      const ExternalityMatrix& mtx)
      -> std::optional<StageEquilibrium> {
    if (round >= k) return std::nullopt;
    for (int t = 0; t < round; ++t) {
      if (o[t] == 0) return std::nullopt;
    }
    StageEquilibrium eq;
    eq.bids = {Bid{0, false}, Bid{0, false}, Bid{delta, false}, Bid{delta, true}};
    eq.outcome = ResolveStage(eq.bids, format);
    eq.supporter = 2;
    Require(VerifyStageNash(mtx, eq.bids, format), "I-item profile is not a stage equilibrium");
    return eq;
  };
  auto solution = std::make_shared<SpeSolution>(inst, options);
  s.solution = solution;
  s.profile = ProfileFromSolution(solution);
  s.expected_welfare = 8 + k * delta;
  s.expected_opt = k + 8 + k * eps - half;
  s.expected_poa = s.expected_opt / s.expected_welfare;
  s.notes = {"players 3 and 4 use coverage valuations built to the stated marginal schedule",
             "on the path player 4 takes every I item at price delta, then Y; 1 and 2 take Z"};
  GameReport r = PlayProfile(inst, *s.profile, s.expected_opt);
  Require(r.welfare == s.expected_welfare, "submodular_unbounded path welfare");
  Require(r.allocation[y] == 3, "player 4 wins Y on the path");
  CheckOptimum(s);
  return s;
}

Scenario SecondPriceAdditive(int t, const Money& eps, const Money& delta) {
  if (t < 1 || t > 29) throw std::invalid_argument("second_price_additive needs 1 <= t <= 29");
  if (!(eps > 0 && eps < 1 && delta >= 0)) throw std::invalid_argument("bad eps or delta");
  Scenario s;
  s.name = "second_price_additive";
  s.parameters = {{"t", std::to_string(t)}, {"eps", ToString(eps)}, {"delta", ToString(delta)}};
  AuctionInstance& inst = s.instance;
  inst.format = PriceFormat::kSecond;
  inst.player_names = {"1", "2", "3"};
  for (int i = 0; i < t; ++i) inst.items.push_back("A" + std::to_string(i + 1));
  inst.items.insert(inst.items.end(), {"B", "C"});
  const int m = t + 2;
  std::vector<std::vector<Money>> v(3, std::vector<Money>(m, Money(0)));
  for (int i = 0; i < t; ++i) {
    v[0][i] = 1;
    v[1][i] = 1 - eps;
    v[2][i] = delta;
  }
  v[1][t] = 1;
  v[2][t] = 1 - eps;
  v[0][t + 1] = 1;
  v[1][t + 1] = 1 - eps;
  for (const auto& row : v) inst.players.push_back(Valuation::Additive(row));
  AddRounds(&inst);

  // Path: 3 wins every A, 2 wins B, 1 wins C; the winner bids its value
  // and the rest bid 0. Any other bid vector leaves the path for good.
  const std::vector<int> path_winner = [&] {
    std::vector<int> w(m, 2);
    w[t] = 1;
    w[t + 1] = 0;
    return w;
  }();
  auto path_bids = [v, path_winner](size_t round) {
    std::vector<Bid> b(3, Bid{0, false});
    int w = path_winner[round];
    b[w] = {v[w][round], false};
    return b;
  };
  auto on_path = [path_bids](const BidHistory& h) {
    for (size_t r = 0; r < h.size(); ++r) {
      if (h[r].bids != path_bids(r)) return false;
    }
    return true;
  };
  StrategyProfileOracle p;
  p.bids = [v, path_bids, on_path](const BidHistory& h) {
    if (on_path(h)) return path_bids(h.size());
    std::vector<Bid> b;
    for (int i = 0; i < 3; ++i) b.push_back({v[i][h.size()], false});
    return b;
  };
  p.state_key = [on_path](const BidHistory& h) { return std::string(on_path(h) ? "on" : "off"); };
  s.profile = p;
  s.expected_welfare = 2 + t * delta;
  s.expected_opt = t + 2;
  s.expected_poa = s.expected_opt / s.expected_welfare;
  s.notes = {"welfare on the path is 2 + t*delta from the value table",
             "player 1 gains t*eps - delta by taking A_1 and facing truthful play after; "
             "the profile is an equilibrium only when t*eps <= delta"};
  GameReport r = PlayProfile(inst, p, s.expected_opt);
  Require(r.welfare == s.expected_welfare, "second_price_additive path welfare");
  CheckOptimum(s);
  return s;
}

Scenario SecondPriceUnitDemand(int k, const Money& eps, const Money& delta, int gadget_spe) {
  if (k < 0 || k > 15) throw std::invalid_argument("second_price_unit_demand needs 0 <= k <= 15");
  if (!(delta > 0 && delta < eps && eps < 1)) {
    throw std::invalid_argument("second_price_unit_demand needs 0 < delta < eps < 1");
  }
  if (gadget_spe != 1 && gadget_spe != 2) throw std::invalid_argument("gadget must be 1 or 2");
  if (gadget_spe == 2 && k > 0) {
    throw std::invalid_argument("the second gadget equilibrium is only offered with k = 0");
  }
  Scenario s;
  s.name = "second_price_unit_demand";
  s.parameters = {{"k", std::to_string(k)},
                  {"eps", ToString(eps)},
                  {"delta", ToString(delta)},
                  {"gadget", std::to_string(gadget_spe)}};
  AuctionInstance& inst = s.instance;
  inst.format = PriceFormat::kSecond;
  const int n = k + 3, m = 2 * k + 2;
  const int a = k, b = k + 1, c = k + 2;
  const int a_star = 2 * k, b_star = 2 * k + 1;
  for (int i = 0; i < k; ++i) {
    inst.player_names.push_back(std::to_string(i + 1));
    inst.items.push_back("A" + std::to_string(i + 1));
    inst.items.push_back("B" + std::to_string(i + 1));
  }
  inst.player_names.insert(inst.player_names.end(), {"a", "b", "c"});
  inst.items.insert(inst.items.end(), {"A*", "B*"});
  std::vector<std::vector<Money>> v(n, std::vector<Money>(m, Money(0)));
  for (int i = 0; i < k; ++i) {
    v[i][2 * i] = 1 - eps;
    v[i][2 * i + 1] = delta;
  }
  v[a][a_star] = 1;
  v[b][a_star] = 3;
  v[b][b_star] = 1;
  v[c][a_star] = 3;
  v[c][b_star] = 1;
  for (const auto& row : v) inst.players.push_back(Valuation::UnitDemand(row));
  AddRounds(&inst);

  // Block i is good for b when b or c takes A_i and either paid nothing or
  // one of them also takes B_i. All blocks good selects the first gadget
  // equilibrium (b takes A*), anything else the second.
  auto block_good = [b, c](const StageOutcome& ai, const StageOutcome& bi) {
    return InSet(ai.winner, {b, c}) && (ai.price == 0 || InSet(bi.winner, {b, c}));
  };
  auto prefix_good = [block_good](const BidHistory& h, int blocks) {
    for (int i = 0; i < blocks; ++i) {
      if (!block_good(h[2 * i], h[2 * i + 1])) return false;
    }
    return true;
  };
  const AuctionInstance copy = inst;
  auto truthful = [copy](const BidHistory& h) {
    Owners owners = OwnersAfter(copy, h);
    const int item = copy.rounds[h.size()][0];
    std::vector<Bid> bids;
    for (int i = 0; i < copy.n(); ++i) {
      bids.push_back({copy.players[i].Marginal(BundleOf(owners, i), item), false});
    }
    return bids;
  };
  StrategyProfileOracle p;
  p.bids = [=](const BidHistory& h) {
    const int r = static_cast<int>(h.size());
    std::vector<Bid> bids(n, Bid{0, false});
    if (r < 2 * k) {
      const int blk = r / 2;
      const bool good = prefix_good(h, blk);
      if (r % 2 == 0) {
        if (!good) return truthful(h);
        bids[b] = {1 - delta, false};
        return bids;
      }
      const StageOutcome& ai = h[r - 1];
      if (good && InSet(ai.winner, {b, c}) && ai.price > 0) {
        bids[b] = {1, false};
        bids[blk] = {delta, false};
        return bids;
      }
      return truthful(h);
    }
    if (r == a_star) {
      const int pick = prefix_good(h, k) ? gadget_spe : 2;
      bids[a] = {1, false};
      bids[pick == 1 ? b : c] = {3, false};
      return bids;
    }
    return truthful(h);
  };
  p.breakpoints = [k](const BidHistory& h) {
    const int r = static_cast<int>(h.size());
    if (r < 2 * k && r % 2 == 0) return std::vector<Money>{Money(0)};
    return std::vector<Money>{};
  };
  p.state_key = [=](const BidHistory& h) {
    const int r = static_cast<int>(h.size());
    if (r <= 2 * k) {
      const int blk = r / 2;
      std::string key = prefix_good(h, blk) ? "g" : "x";
      if (r < 2 * k && r % 2 == 1) {
        const StageOutcome& ai = h[r - 1];
        key += ai.winner == blk ? "i" : (InSet(ai.winner, {b, c}) ? "bc" : "o");
        key += ai.price == 0 ? "0" : "+";
      }
      return key;
    }
    return "A*" + std::to_string(h[a_star].winner);
  };
  s.profile = p;
  s.expected_welfare = k * delta + 4;
  s.expected_opt = k * (1 - eps) + 4;
  s.expected_poa = s.expected_opt / s.expected_welfare;
  s.notes = {
      "values reconstructed: player i values A_i at 1-eps and B_i at delta; b and c value "
      "A* at 3 and B* at 1; a values A* at 1; b and c bid on blocks only to signal",
      "gadget equilibrium 1: b takes A* at price 1; equilibrium 2: c takes A*, b takes B*"};
  GameReport r = PlayProfile(inst, p, s.expected_opt);
  Require(r.welfare == s.expected_welfare, "second_price_unit_demand path welfare");
  CheckOptimum(s);
  return s;
}

Scenario DominatedStrategySpe(bool truthful) {
  Scenario s;
  s.name = "dominated_strategy_spe";
  s.parameters = {{"truthful", truthful ? "1" : "0"}};
  AuctionInstance& inst = s.instance;
  inst.format = PriceFormat::kSecond;
  inst.player_names = {"1", "2"};
  inst.items = {"A", "B"};
  inst.players = {Valuation::Additive({1, 1}), Valuation::Additive({1, 1})};
  AddRounds(&inst);
  StrategyProfileOracle p;
  if (truthful) {
    p.bids = [](const BidHistory&) { return std::vector<Bid>{{1, false}, {1, false}}; };
    p.state_key = [](const BidHistory&) { return std::string(); };
  } else {
    // Player 1 answers a zero opening bid from 2 by stepping aside.
    auto threat = [](const BidHistory& h) { return h[0].bids[1] != Bid{0, false}; };
    p.bids = [threat](const BidHistory& h) {
      if (h.empty()) return std::vector<Bid>{{1, false}, {0, false}};
      return std::vector<Bid>{{threat(h) ? 1 : 0, false}, {1, false}};
    };
    p.breakpoints = [](const BidHistory& h) {
      return h.empty() ? std::vector<Money>{Money(0)} : std::vector<Money>{};
    };
    p.state_key = [threat](const BidHistory& h) {
      return h.empty() ? std::string() : std::string(threat(h) ? "t" : "q");
    };
  }
  s.profile = p;
  s.expected_welfare = 2;
  s.expected_opt = 2;
  s.expected_poa = 1;
  GameReport r = PlayProfile(inst, p);
  Require(r.welfare == 2, "dominated_strategy_spe welfare");
  if (!truthful) Require(r.utilities == std::vector<Money>{1, 1}, "threat profile payoffs");
  CheckOptimum(s);
  return s;
}

NonexistenceScenario MultiItemNonexistence(const Money& v, const Money& delta, const Money& eps) {
  if (!(delta > 0 && eps > 0 && 20 * delta < v && eps < delta / 3)) {
    throw std::invalid_argument("multi_item_nonexistence needs 0 < eps < delta/3, 20 delta < v");
  }
  NonexistenceScenario out;
  Scenario& s = out.scenario;
  s.name = "multi_item_nonexistence";
  s.parameters = {{"v", ToString(v)}, {"delta", ToString(delta)}, {"eps", ToString(eps)}};
  AuctionInstance& inst = s.instance;
  inst.player_names = {"1", "2", "3", "4"};
  inst.items = {"X1", "X2", "W", "Y", "Z"};
  enum { kX1, kX2, kW, kY, kZ };
  inst.rounds = {{kX1, kX2}, {kW}, {kY}, {kZ}};
  const Money third = delta / 3;
  // Player 2 elements: a (v) shared by Y and Z, c (delta/3) in both X and
  // Y, y (delta/3) in Y, z (delta/2) in Z.
  Valuation v2 = Valuation::Coverage({v, third, third, delta / 2},
                                     {{1}, {1}, {}, {0, 1, 2}, {0, 3}});
  // Player 3 elements: p (2v/3) and q (delta/3) in both X; q and r (delta)
  // in W; r and s (v - delta/2) in Y.
  Valuation v3 = Valuation::Coverage({2 * v / 3, third, delta, v - delta / 2},
                                     {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {}});
  inst.players = {Valuation::Additive({0, 0, 0, 0, v}), v2, v3,
                  Valuation::Additive({0, 0, 2 * third + eps, 0, 0})};
  out.walrasian_allocation.owner = {1, 2, 3, 2, 1};
  // Z's price is not in the quoted list; v is the least price that keeps
  // player 1 out.
  out.walrasian_prices = {third, third, 2 * third, v + delta / 6, v};
  out.grid = delta / 4;
  s.expected_opt = BruteForceOptimalAllocation(inst.players, inst.AllItems()).welfare;
  s.expected_welfare = Welfare(inst.players, out.walrasian_allocation);
  s.expected_poa = s.expected_opt / s.expected_welfare;
  s.notes = {"players 2 and 3 use coverage valuations rebuilt from the case analysis",
             "price of Z set to v; the quoted equilibrium omits it"};
  Require(CheckWalrasian(inst.players, out.walrasian_allocation, out.walrasian_prices),
          "quoted allocation and prices are not Walrasian");

  // Later rounds: player 1 keeps v - delta/2 unless 2 or 3 holds an X; any
  // X is worth at least 2v/3 to player 3.
  SpeSolution later(inst, SolveOptions{});
  for (int o1 = 0; o1 < 4; ++o1) {
    for (int o2 = 0; o2 < 4; ++o2) {
      Owners state{o1, o2, -1, -1, -1};
      std::vector<Money> cont = later.Continuation(state);
      const bool split = InSet(o1, {1, 2}) || InSet(o2, {1, 2});
      Require(cont[0] == (split ? Money(0) : Money(v - delta / 2)), "AND bidder continuation");
      Money own = inst.players[2].Value(BundleOf(state, 2));
      Require(own + cont[2] > 2 * v / 3 || !InSet(2, {o1, o2}), "OR bidder value");
      Require(cont[2] < 2 * delta, "OR bidder continuation stays small");
    }
  }
  return out;
}

bool CheckWalrasian(const std::vector<Valuation>& players, const Allocation& allocation,
                    const std::vector<Money>& prices) {
  if (players.empty()) return true;
  const int m = players.front().num_items();
  if (m > 20) throw std::invalid_argument("check_walrasian scans 2^m bundles; m too large");
  if (static_cast<int>(prices.size()) != m || static_cast<int>(allocation.owner.size()) != m) {
    throw std::invalid_argument("prices and allocation must cover every item");
  }
  for (int j = 0; j < m; ++j) {
    if (prices[j] < 0) return false;
    if (allocation.owner[j] < 0 && prices[j] != 0) return false;
  }
  const ItemSet full = m == 0 ? 0 : (ItemSet{1} << m) - 1;
  std::vector<Money> cost(size_t{1} << m, Money(0));
  for (ItemSet s = 1; s <= full && s != 0; ++s) {
    int low = std::countr_zero(s);
    cost[s] = cost[s & (s - 1)] + prices[low];
  }
  for (size_t i = 0; i < players.size(); ++i) {
    ItemSet mine = allocation.BundleOf(static_cast<int>(i));
    Money have = players[i].Value(mine) - cost[mine];
    for (ItemSet s = 0; s <= full; ++s) {
      if (players[i].Value(s) - cost[s] > have) return false;
      if (s == full) break;
    }
  }
  return true;
}

ScenarioCheck CheckScenario(const Scenario& s, bool verify, const VerifyOptions& options) {
  ScenarioCheck out;
  out.report = s.profile ? PlayProfile(s.instance, *s.profile, s.expected_opt)
                         : Play(SolveSpe(s.instance), s.expected_opt);
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      out.failures.push_back(what);
    }
  };
  expect(out.report.welfare == s.expected_welfare, "welfare");
  expect(out.report.opt && *out.report.opt == s.expected_opt, "optimum");
  expect(out.report.poa && *out.report.poa == s.expected_poa, "price of anarchy");
  if (verify && s.profile) {
    out.verification = VerifySpe(s.instance, *s.profile, options);
    expect(out.verification->status == VerifyStatus::kPass,
           "profile verification: " + StatusName(out.verification->status));
  }
  return out;
}

namespace {

Money Draw(std::mt19937_64& rng, const RandomValueRange& range) {
  std::uniform_int_distribution<int> d(0, range.max_units);
  return Rational(d(rng), range.den);
}

AuctionInstance Skeleton(int m, PriceFormat format) {
  AuctionInstance inst;
  inst.format = format;
  for (int j = 0; j < m; ++j) inst.items.push_back(std::string(1, static_cast<char>('A' + j)));
  AddRounds(&inst);
  return inst;
}

}  // namespace

AuctionInstance RandomUnitDemand(std::mt19937_64& rng, int n, int m, RandomValueRange range,
                                 PriceFormat format) {
  AuctionInstance inst = Skeleton(m, format);
  for (int i = 0; i < n; ++i) {
    std::vector<Money> v(m);
    for (auto& x : v) x = Draw(rng, range);
    inst.players.push_back(Valuation::UnitDemand(v));
  }
  return inst;
}

AuctionInstance RandomAdditive(std::mt19937_64& rng, int n, int m, RandomValueRange range,
                               PriceFormat format) {
  AuctionInstance inst = Skeleton(m, format);
  for (int i = 0; i < n; ++i) {
    std::vector<Money> v(m);
    for (auto& x : v) x = Draw(rng, range);
    inst.players.push_back(Valuation::Additive(v));
  }
  return inst;
}

AuctionInstance RandomUniformSubmodular(std::mt19937_64& rng, int n, int m,
                                        std::optional<Money> delta, RandomValueRange range) {
  AuctionInstance inst = Skeleton(m, PriceFormat::kFirst);
  std::uniform_int_distribution<int> eighth(0, 8);
  std::uniform_int_distribution<int> top(1, std::max(1, range.max_units));
  const Money h = Rational(top(rng), range.den);
  for (int i = 0; i < n; ++i) {
    std::vector<Money> marg(m);
    if (delta) {
      marg[0] = h * (1 - *delta * Rational(eighth(rng), 8));
    } else {
      marg[0] = Rational(top(rng), range.den);
    }
    for (int c = 1; c < m; ++c) marg[c] = marg[c - 1] * Rational(eighth(rng), 8);
    inst.players.push_back(Valuation::UniformSubmodular(m, marg));
  }
  return inst;
}

std::vector<std::string> ScenarioNames() {
  return {"figure1",
          "submodular_unbounded",
          "second_price_additive",
          "second_price_unit_demand",
          "multi_item_nonexistence",
          "dominated_strategy_spe"};
}

Scenario BuildScenario(const std::string& name, const std::map<std::string, std::string>& params) {
  std::map<std::string, std::string> left = params;
  auto money = [&](const std::string& key, const char* fallback) {
    auto it = left.find(key);
    Money x = ParseMoney(it == left.end() ? fallback : it->second);
    if (it != left.end()) left.erase(it);
    return x;
  };
  auto count = [&](const std::string& key, int fallback) {
    auto it = left.find(key);
    if (it == left.end()) return fallback;
    Money x = ParseMoney(it->second);
    left.erase(it);
    if (x.get_den() != 1 || !x.get_num().fits_sint_p()) {
      throw std::invalid_argument(key + " must be an integer");
    }
    return static_cast<int>(x.get_num().get_si());
  };
  Scenario s;
  if (name == "figure1") {
    Money alpha = money("alpha", "1");
    s = Figure1(alpha, money("eps", "1/100"));
  } else if (name == "submodular_unbounded") {
    int k = count("k", 20);
    Money delta = money("delta", "1/1000");
    s = SubmodularUnbounded(k, delta, money("eps", "1/1000"));
  } else if (name == "second_price_additive") {
    int t = count("t", 20);
    Money eps = money("eps", "1/100000");
    s = SecondPriceAdditive(t, eps, money("delta", "1/1000"));
  } else if (name == "second_price_unit_demand") {
    int k = count("k", 10);
    Money eps = money("eps", "1/10");
    Money delta = money("delta", "1/100");
    s = SecondPriceUnitDemand(k, eps, delta, count("gadget", 1));
  } else if (name == "multi_item_nonexistence") {
    Money v = money("v", "1");
    Money delta = money("delta", "1/100");
    s = MultiItemNonexistence(v, delta, money("eps", "1/1000")).scenario;
  } else if (name == "dominated_strategy_spe") {
    s = DominatedStrategySpe(count("truthful", 0) != 0);
  } else {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  if (!left.empty()) throw std::invalid_argument("unknown parameter: " + left.begin()->first);
  return s;
}

}  // namespace seqauction
