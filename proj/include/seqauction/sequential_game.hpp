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

#ifndef SEQAUCTION_SEQUENTIAL_GAME_HPP_
#define SEQAUCTION_SEQUENTIAL_GAME_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqauction/money.hpp"
#include "seqauction/stage_auction.hpp"
#include "seqauction/valuations.hpp"

namespace seqauction {

struct AuctionInstance {
  std::vector<std::string> player_names;  // optional labels
  std::vector<Valuation> players;
  std::vector<std::string> items;
  std::vector<std::vector<int>> rounds;  // item indices, in auction order
  PriceFormat format = PriceFormat::kFirst;

  int n() const { return static_cast<int>(players.size()); }
  int m() const { return static_cast<int>(items.size()); }
  bool AllSingletonRounds() const;
  ItemSet AllItems() const;
  std::string PlayerName(int i) const;
  int ItemIndex(const std::string& name) const;  // -1 if unknown
};

// Rounds must partition the items and every valuation must cover them.
void ValidateInstance(const AuctionInstance& instance);

// owners[j] is the winner of item j so far, -1 while unsold.
using Owners = std::vector<int>;

ItemSet BundleOf(const Owners& owners, int player);

// Rewrites a history into a representative with identical continuation
// (used to fold symmetric items together). Must be idempotent.
using StateCanonicalizer = std::function<void(Owners&)>;

// Optional override of the stage equilibrium picked at a state; returning
// nullopt keeps the default choice.
using StageSelector = std::function<std::optional<StageEquilibrium>(
    const Owners& owners, int round, const ExternalityMatrix& matrix)>;

// Without a canonicalizer or selector, all-additive instances fold every
// history of equal length into one state.
struct SolveOptions {
  size_t max_states = 500000;
  StateCanonicalizer canonicalize;
  StageSelector select;
};

struct StageRecord {
  int round = 0;
  Owners owners;
  ExternalityMatrix matrix;
  StageEquilibrium equilibrium;
  // Utility each player collects from this round to the end.
  std::vector<Money> continuation;
};

class SpeSolution {
 public:
  SpeSolution(AuctionInstance instance, SolveOptions options);

  const AuctionInstance& instance() const { return instance_; }
  // Solves lazily; throws std::length_error past options.max_states.
  const StageRecord& Node(const Owners& owners) const;
  // Zero vector once every round is sold.
  std::vector<Money> Continuation(const Owners& owners) const;
  size_t size() const { return nodes_.size(); }
  int RoundOf(const Owners& owners) const;
  // Memo key of the canonical form of `owners`.
  std::string StateKey(Owners owners) const;

 private:
  AuctionInstance instance_;
  SolveOptions options_;
  mutable std::unordered_map<std::string, std::unique_ptr<StageRecord>> nodes_;
};

// Throws std::invalid_argument on multi-item rounds.
SpeSolution SolveSpe(const AuctionInstance& instance, SolveOptions options = {});

// v_i^j at `state`: marginal value of the round's item to i when j = i,
// plus i's continuation utility in the solved subgame after j wins.
ExternalityMatrix ContinuationMatrix(const SpeSolution& solution, const Owners& state);

struct GameReport {
  Owners allocation;
  std::vector<Money> prices;  // per item
  std::vector<Money> utilities;
  Money welfare;
  std::optional<Money> opt;
  std::optional<Money> poa;  // opt / welfare; absent when welfare is 0 or opt unknown
};

// Fills welfare, opt (brute force when n^m fits) and poa from allocation
// and prices.
void FinishReport(const AuctionInstance& instance, GameReport* report,
                  std::optional<Money> known_opt = std::nullopt);

GameReport Play(const SpeSolution& solution, std::optional<Money> known_opt = std::nullopt);

// All equilibrium outcomes reachable when every state may pick any
// compatible (winner, price). Prices inside an interval are sampled at the
// endpoints and the midpoint. At most max_per_state distinct continuations
// are kept per state; `truncated` reports whether that cap bit.
struct OutcomeSetOptions {
  size_t max_per_state = 64;
  size_t max_combinations = 4096;
  size_t max_states = 200000;
};
struct OutcomeSet {
  std::vector<GameReport> outcomes;
  bool truncated = false;
  size_t states = 0;
};
OutcomeSet EnumerateSpeOutcomes(const AuctionInstance& instance, OutcomeSetOptions options = {});

// Full-history strategy profile for singleton-round instances.
using BidHistory = std::vector<StageOutcome>;
struct StrategyProfileOracle {
  std::function<std::vector<Bid>(const BidHistory&)> bids;
  // Bid amounts at this node where the profile's later behaviour changes.
  std::function<std::vector<Money>(const BidHistory&)> breakpoints;
  // Histories with equal keys must have identical continuations; lets the
  // verifier fold the tree. Defaults to the full bid history.
  std::function<std::string(const BidHistory&)> state_key;
};

// Profile that follows a solved SPE (depends on winners only).
StrategyProfileOracle ProfileFromSolution(std::shared_ptr<const SpeSolution> solution);

Owners OwnersAfter(const AuctionInstance& instance, const BidHistory& history);

struct VerifyOptions {
  Money grid = Rational(1, 1000000);
  size_t max_nodes = 200000;
  int max_depth = -1;  // -1: no limit
};

enum class VerifyStatus { kPass, kFail, kInconclusive };
std::string StatusName(VerifyStatus s);

struct SpeViolation {
  BidHistory history;
  int player = -1;
  Bid deviation;
  Money gain;
};

struct SpeVerification {
  VerifyStatus status = VerifyStatus::kPass;
  std::optional<SpeViolation> violation;
  size_t nodes_checked = 0;
  std::string note;
};

// One-shot deviation check at every node reachable through the profile or
// through tried deviations. Candidates per player: 0; each opponent amount
// (plain and plus); the top opponent amount plus one grid step; every
// declared breakpoint and its neighbours one grid step away (plain and
// plus). Any cap hit yields kInconclusive.
SpeVerification VerifySpe(const AuctionInstance& instance, const StrategyProfileOracle& profile,
                          const VerifyOptions& options = {});

GameReport PlayProfile(const AuctionInstance& instance, const StrategyProfileOracle& profile,
                       std::optional<Money> known_opt = std::nullopt);

// Simultaneous multi-item round: every player submits one bid per item,
// each item sold by first price.
struct GridBestResponseStep {
  int player;
  std::vector<Bid> bids;  // per item of the round
};

struct GridStageResult {
  bool found = false;
  std::vector<std::vector<Bid>> bids;  // [player][item of round]
  Owners round_owners;                 // winners of the round's items
  std::vector<Money> prices;
  // Best-response cycle witnessed when no equilibrium was found.
  std::vector<GridBestResponseStep> cycle;
  size_t profiles_checked = 0;
};

struct GridOptions {
  size_t max_profiles = 50000000;
  size_t max_dynamics_steps = 100000;
};

// Searches, on the grid, profiles where each item has a winner bidding p+
// and one supporter bidding p (or nobody bids), checking each against exact
// grid best responses. Later rounds are solved with SolveSpe. Throws
// std::length_error when the search exceeds options.max_profiles.
GridStageResult GridStageEquilibrium(const AuctionInstance& instance, const Owners& state,
                                     const Money& grid, GridOptions options = {});

// Sweeps generated instances and reports the worst opt/welfare ratio.
struct SweepOptions {
  int count = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  // Use EnumerateSpeOutcomes (worst outcome) when n^m is at most this.
  double enumerate_all_limit = 0;
};

struct SweepResult {
  int instances = 0;
  Money worst_ratio = 1;
  int worst_index = -1;
  int enumerated = 0;
  int truncated = 0;
  std::vector<int> histogram;  // ratio buckets of width 1/4 from 1
};

using InstanceGenerator = std::function<AuctionInstance(std::mt19937_64&)>;

// Instance k is drawn from a generator seeded with seed + k, so results do
// not depend on the job count.
SweepResult PoaSweep(const InstanceGenerator& generator, const SweepOptions& options);

int DefaultJobs();  // SEQAUCTION_JOBS or hardware concurrency

}  // namespace seqauction

#endif  // SEQAUCTION_SEQUENTIAL_GAME_HPP_
