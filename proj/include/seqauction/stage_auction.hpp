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

#ifndef SEQAUCTION_STAGE_AUCTION_HPP_
#define SEQAUCTION_STAGE_AUCTION_HPP_

#include <compare>
#include <string>
#include <vector>

#include "seqauction/money.hpp"

namespace seqauction {

enum class PriceFormat { kFirst, kSecond };

std::string FormatName(PriceFormat f);
PriceFormat ParseFormat(const std::string& name);

// A bid of `amount`, or of "amount+" (infinitesimally above amount) when
// plus is set.
struct Bid {
  Money amount = 0;
  bool plus = false;

  friend bool operator==(const Bid& a, const Bid& b) {
    return a.amount == b.amount && a.plus == b.plus;
  }
  friend std::strong_ordering operator<=>(const Bid& a, const Bid& b) {
    if (a.amount < b.amount) return std::strong_ordering::less;
    if (b.amount < a.amount) return std::strong_ordering::greater;
    return a.plus <=> b.plus;
  }
};

std::string ToString(const Bid& b);

// v[i][j] is player i's payoff (before payments) when player j wins.
struct ExternalityMatrix {
  std::vector<std::vector<Money>> v;

  int n() const { return static_cast<int>(v.size()); }
  const Money& operator()(int i, int j) const { return v[i][j]; }
  bool operator==(const ExternalityMatrix& other) const = default;
};

// Validates shape (square, n >= 2); throws std::invalid_argument.
void ValidateMatrix(const ExternalityMatrix& m);

struct StageOutcome {
  int winner = 0;
  Money price = 0;
  std::vector<Bid> bids;
};

// Highest bid wins, equal bids go to the lowest index. First price charges
// the winning amount, second price the highest losing amount.
StageOutcome ResolveStage(const std::vector<Bid>& bids, PriceFormat format);

// Stage utility of player i: v_i^w minus the price when i is the winner w.
Money StageUtility(const ExternalityMatrix& m, const StageOutcome& outcome, int i);

ExternalityMatrix Normalize(const ExternalityMatrix& m);

bool IsToxic(const ExternalityMatrix& m);

// edge[i][j] is set when j strictly prefers winning at price p to letting
// i win: v_j^j - p > v_j^i.
struct OverbiddingGraph {
  Money price;
  std::vector<std::vector<bool>> edge;

  int InDegree(int j, const std::vector<bool>& alive) const;
  int OutDegree(int i, const std::vector<bool>& alive) const;
};

OverbiddingGraph BuildOverbiddingGraph(const ExternalityMatrix& m, const Money& p);

// Sorted distinct nonnegative prices at which some edge disappears, with 0
// always first.
std::vector<Money> Breakpoints(const ExternalityMatrix& m);

struct OutDegreeZeroEvent {
  int player;
  Money price;
  int supporter;  // -1 when the player has no surviving in-neighbor
};

struct TauReport {
  std::vector<Money> tau;
  std::vector<Money> gamma;
  std::vector<int> removal_order;
  std::vector<OutDegreeZeroEvent> events;
};

TauReport TauThresholds(const ExternalityMatrix& m);

struct CompatibleOutcome {
  int winner;
  Money low;
  Money high;
  bool low_open = false;
  bool high_open = false;
  bool toxic = false;

  bool ContainsPrice(const Money& p) const;
};

// Winner/price pairs reachable by an equilibrium whose bids stay at or below
// each player's tau, one interval per winner. At price 0 the fixed
// tie-break decides which players can actually be kept as winner.
std::vector<CompatibleOutcome> EnumerateCompatibleOutcomes(const ExternalityMatrix& m);
std::vector<CompatibleOutcome> EnumerateCompatibleOutcomes(const ExternalityMatrix& m,
                                                           const TauReport& tau);

struct StageEquilibrium {
  std::vector<Bid> bids;
  StageOutcome outcome;
  int supporter = -1;
  // False when no outcome within the tau bounds is an equilibrium under the
  // fixed tie-break and the bids had to leave that range.
  bool compatible = true;
};

// Lowest compatible price, then lowest winner index. The winner bids p+, the
// supporter bids p, everyone else bids 0.
//
// With ties going to the lowest index, a player nobody overbids at price 0
// may still prefer to drop out and hand the item to player 0, which can
// leave no compatible outcome at all. Such a player i is then kept as
// winner at the smallest positive breakpoint, backed by a player j with
// v_i^i > v_i^j.
StageEquilibrium CanonicalEquilibrium(const ExternalityMatrix& m, PriceFormat format);

// Fills *out with a profile in which `winner` wins at price p. Returns false
// when p is outside that winner's compatible set.
bool BuildProfileFor(const ExternalityMatrix& m, const TauReport& tau, int winner, const Money& p,
                     PriceFormat format, StageEquilibrium* out);

struct AscendingState {
  int winner;
  int setter;
  Money price;

  bool operator==(const AscendingState& o) const = default;
};

struct AscendingResult {
  StageEquilibrium equilibrium;
  std::vector<AscendingState> trace;
  bool toxic = false;
};

// Throws std::invalid_argument if epsilon <= 0.
AscendingResult AscendingEquilibrium(const ExternalityMatrix& m, const Money& epsilon,
                                     PriceFormat format = PriceFormat::kFirst);

// True iff no player has a strictly profitable unilateral deviation. Checked
// deviations: bidding 0, matching or plus-matching any opponent amount, and
// winning just above the top opponent amount (a supremum that is approached
// but not attained when the top bid belongs to a lower index).
bool VerifyStageNash(const ExternalityMatrix& m, const std::vector<Bid>& bids, PriceFormat format);

// Player and bid of the first profitable deviation, if any.
struct Deviation {
  int player = -1;
  Money gain;
};
Deviation FindStageDeviation(const ExternalityMatrix& m, const std::vector<Bid>& bids,
                             PriceFormat format);

// Throws std::invalid_argument when bids are not a second-price equilibrium.
bool IsEnvyFreeSecondPrice(const ExternalityMatrix& m, const std::vector<Bid>& bids);

}  // namespace seqauction

#endif  // SEQAUCTION_STAGE_AUCTION_HPP_
