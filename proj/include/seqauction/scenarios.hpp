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

#ifndef SEQAUCTION_SCENARIOS_HPP_
#define SEQAUCTION_SCENARIOS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "seqauction/money.hpp"
#include "seqauction/sequential_game.hpp"
#include "seqauction/valuations.hpp"

namespace seqauction {

// A named construction with its closed-form metrics. Builders check the
// instance against these metrics and throw std::logic_error on mismatch.
struct Scenario {
  std::string name;
  std::map<std::string, std::string> parameters;
  AuctionInstance instance;
  // Reference strategy profile; absent when the scenario is about the
  // solver's own equilibrium.
  std::optional<StrategyProfileOracle> profile;
  // Keeps any solver the profile reads from alive.
  std::shared_ptr<const SpeSolution> solution;
  Money expected_welfare;
  Money expected_opt;
  Money expected_poa;
  std::vector<std::string> notes;
};

// Solver-found SPE of a four-player unit-demand instance with welfare
// 2a + e against an optimum of 3a - e. Requires 0 < e < a.
Scenario Figure1(const Money& alpha, const Money& eps);

// Two additive and two coverage bidders over I_1..I_k, Y, Z_1, Z_2. The
// reference profile lets players 3 and 4 take every I item.
Scenario SubmodularUnbounded(int k, const Money& delta, const Money& eps);

// Second-price, additive, items A_1..A_t, B, C. On the reference path
// player 3 takes every A item; off the path everyone bids truthfully.
Scenario SecondPriceAdditive(int t, const Money& eps, const Money& delta);

// Second-price, unit-demand, items A_1, B_1, ..., A_k, B_k, A*, B* and
// players 1..k, a, b, c. `gadget_spe` (1 or 2) picks which equilibrium of
// the final two auctions the profile plays on its path.
Scenario SecondPriceUnitDemand(int k, const Money& eps, const Money& delta, int gadget_spe = 1);

// Four players, {X_1, X_2} sold together, then W, Y, Z. Carries the quoted
// Walrasian allocation and prices.
struct NonexistenceScenario {
  Scenario scenario;
  Allocation walrasian_allocation;
  std::vector<Money> walrasian_prices;
  Money grid;
};
NonexistenceScenario MultiItemNonexistence(const Money& v, const Money& delta, const Money& eps);

// True iff every player's bundle maximizes v_i(S) - p(S) over all bundles
// and unallocated items have price 0.
bool CheckWalrasian(const std::vector<Valuation>& players, const Allocation& allocation,
                    const std::vector<Money>& prices);

// Two identical items, two additive players valuing each at 1, second
// price. Threat profile unless `truthful`.
Scenario DominatedStrategySpe(bool truthful = false);

struct ScenarioCheck {
  bool pass = true;
  GameReport report;
  std::optional<SpeVerification> verification;
  std::vector<std::string> failures;
};

// Plays the profile (or solves), compares the metrics and, when a profile
// exists and `verify` is set, runs VerifySpe.
ScenarioCheck CheckScenario(const Scenario& s, bool verify, const VerifyOptions& options = {});

// Seeded generators. Values are multiples of 1/den in [0, max_units/den].
struct RandomValueRange {
  int max_units = 8;
  int den = 1;
};
AuctionInstance RandomUnitDemand(std::mt19937_64& rng, int n, int m, RandomValueRange range = {},
                                 PriceFormat format = PriceFormat::kFirst);
AuctionInstance RandomAdditive(std::mt19937_64& rng, int n, int m, RandomValueRange range = {},
                               PriceFormat format = PriceFormat::kFirst);
// When `delta` is set, every top marginal lies in [(1 - delta) h, h] for a
// common h, so |v_i^1 - v_j^1| <= delta max(v_i^1, v_j^1).
AuctionInstance RandomUniformSubmodular(std::mt19937_64& rng, int n, int m,
                                        std::optional<Money> delta = std::nullopt,
                                        RandomValueRange range = {});

// Builds a scenario by CLI name: figure1, submodular_unbounded,
// second_price_additive, second_price_unit_demand, multi_item_nonexistence,
// dominated_strategy_spe. Unknown parameters throw std::invalid_argument.
Scenario BuildScenario(const std::string& name, const std::map<std::string, std::string>& params);
std::vector<std::string> ScenarioNames();

}  // namespace seqauction

#endif  // SEQAUCTION_SCENARIOS_HPP_
