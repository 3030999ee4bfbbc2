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

#include "seqauction/sequential_game.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace seqauction {

bool AuctionInstance::AllSingletonRounds() const {
  for (const auto& r : rounds) {
    if (r.size() != 1) return false;
  }
  return true;
}

ItemSet AuctionInstance::AllItems() const {
  ItemSet s = 0;
  for (int j = 0; j < m(); ++j) s |= Singleton(j);
  return s;
}

std::string AuctionInstance::PlayerName(int i) const {
  if (i >= 0 && i < static_cast<int>(player_names.size())) return player_names[i];
  return std::to_string(i + 1);
}

int AuctionInstance::ItemIndex(const std::string& name) const {
  for (int j = 0; j < m(); ++j) {
    if (items[j] == name) return j;
  }
  return -1;
}

void ValidateInstance(const AuctionInstance& instance) {
  if (instance.n() < 1) throw std::invalid_argument("instance has no players");
  if (instance.m() > 32) throw std::invalid_argument("at most 32 items are supported");
  for (const auto& v : instance.players) {
    if (v.num_items() != instance.m()) {
      throw std::invalid_argument("valuation item count does not match the instance");
    }
  }
  std::vector<int> seen(instance.m(), 0);
  for (const auto& r : instance.rounds) {
    if (r.empty()) throw std::invalid_argument("empty round");
    for (int j : r) {
      if (j < 0 || j >= instance.m()) throw std::invalid_argument("round names an unknown item");
      if (seen[j]++) throw std::invalid_argument("item appears in two rounds");
    }
  }
  for (int j = 0; j < instance.m(); ++j) {
    if (!seen[j]) throw std::invalid_argument("item " + instance.items[j] + " is never sold");
  }
}

ItemSet BundleOf(const Owners& owners, int player) {
  ItemSet s = 0;
  for (size_t j = 0; j < owners.size(); ++j) {
    if (owners[j] == player) s |= Singleton(static_cast<int>(j));
  }
  return s;
}

namespace {

std::string OwnersKey(const Owners& owners) {
  std::string key;
  key.reserve(owners.size());
  for (int o : owners) key.push_back(static_cast<char>(o + 1));
  return key;
}

StageEquilibrium SinglePlayerStage(PriceFormat format) {
  StageEquilibrium eq;
  eq.bids = {Bid{}};
  eq.outcome = ResolveStage(eq.bids, format);
  return eq;
}

}  // namespace

SpeSolution::SpeSolution(AuctionInstance instance, SolveOptions options)
    : instance_(std::move(instance)), options_(std::move(options)) {
  ValidateInstance(instance_);
  // Additive continuations ignore who holds the sold items, so every history
  // of the same length shares one node.
  const bool additive =
      std::all_of(instance_.players.begin(), instance_.players.end(),
                  [](const Valuation& v) { return v.kind() == ValuationKind::kAdditive; });
  if (additive && !options_.canonicalize && !options_.select) {
    options_.canonicalize = [](Owners& o) {
      for (int& x : o) x = x >= 0 ? 0 : -1;
    };
  }
}

int SpeSolution::RoundOf(const Owners& owners) const {
  int r = 0;
  for (const auto& round : instance_.rounds) {
    bool sold = std::all_of(round.begin(), round.end(), [&](int j) { return owners[j] >= 0; });
    if (!sold) break;
    ++r;
  }
  return r;
}

std::string SpeSolution::StateKey(Owners owners) const {
  if (options_.canonicalize) options_.canonicalize(owners);
  return OwnersKey(owners);
}

std::vector<Money> SpeSolution::Continuation(const Owners& owners) const {
  if (RoundOf(owners) == static_cast<int>(instance_.rounds.size())) {
    return std::vector<Money>(instance_.n(), Money(0));
  }
  return Node(owners).continuation;
}

const StageRecord& SpeSolution::Node(const Owners& raw) const {
  Owners owners = raw;
  if (options_.canonicalize) options_.canonicalize(owners);
  std::string key = OwnersKey(owners);
  if (auto it = nodes_.find(key); it != nodes_.end()) return *it->second;

  const int round = RoundOf(owners);
  if (round >= static_cast<int>(instance_.rounds.size())) {
    throw std::logic_error("no auction left at this state");
  }
  if (instance_.rounds[round].size() != 1) {
    throw std::invalid_argument("backward induction needs single-item rounds");
  }
  if (nodes_.size() >= options_.max_states) {
    throw std::length_error("state space exceeds max_states");
  }
  const int n = instance_.n();
  const int item = instance_.rounds[round][0];
  std::vector<std::vector<Money>> child(n);
  for (int j = 0; j < n; ++j) {
    Owners next = owners;
    next[item] = j;
    child[j] = Continuation(next);
  }
  auto record = std::make_unique<StageRecord>();
  record->round = round;
  record->owners = owners;
  record->matrix.v.assign(n, std::vector<Money>(n));
  std::vector<Money> marginal(n);
  for (int i = 0; i < n; ++i) {
    marginal[i] = instance_.players[i].Marginal(BundleOf(owners, i), item);
    for (int j = 0; j < n; ++j) {
      record->matrix.v[i][j] = child[j][i] + (i == j ? marginal[i] : Money(0));
    }
  }
  std::optional<StageEquilibrium> chosen;
  if (options_.select) chosen = options_.select(owners, round, record->matrix);
  if (chosen) {
    record->equilibrium = *chosen;
  } else if (n == 1) {
    record->equilibrium = SinglePlayerStage(instance_.format);
  } else {
    record->equilibrium = CanonicalEquilibrium(record->matrix, instance_.format);
  }
  const int w = record->equilibrium.outcome.winner;
  record->continuation = child[w];
  record->continuation[w] += marginal[w] - record->equilibrium.outcome.price;
  auto [it, inserted] = nodes_.emplace(key, std::move(record));
  return *it->second;
}

SpeSolution SolveSpe(const AuctionInstance& instance, SolveOptions options) {
  if (!instance.AllSingletonRounds()) {
    throw std::invalid_argument("multi-item round present; use GridStageEquilibrium");
  }
  SpeSolution solution(instance, std::move(options));
  if (!instance.rounds.empty()) solution.Node(Owners(instance.m(), -1));
  return solution;
}

ExternalityMatrix ContinuationMatrix(const SpeSolution& solution, const Owners& state) {
  return solution.Node(state).matrix;
}

void FinishReport(const AuctionInstance& instance, GameReport* report,
                  std::optional<Money> known_opt) {
  const int n = instance.n();
  report->welfare = 0;
  report->utilities.assign(n, Money(0));
  for (int i = 0; i < n; ++i) {
    Money v = instance.players[i].Value(BundleOf(report->allocation, i));
    report->welfare += v;
    report->utilities[i] = v;
  }
  for (int j = 0; j < instance.m(); ++j) {
    if (report->allocation[j] >= 0) report->utilities[report->allocation[j]] -= report->prices[j];
  }
  report->opt = known_opt;
  if (!report->opt) {
    try {
      report->opt = BruteForceOptimalAllocation(instance.players, instance.AllItems()).welfare;
    } catch (const std::length_error&) {
      report->opt.reset();
    }
  }
  report->poa.reset();
  if (report->opt && report->welfare > 0) report->poa = Money(*report->opt / report->welfare);
}

GameReport Play(const SpeSolution& solution, std::optional<Money> known_opt) {
  const AuctionInstance& inst = solution.instance();
  GameReport report;
  report.allocation.assign(inst.m(), -1);
  report.prices.assign(inst.m(), Money(0));
  for (const auto& round : inst.rounds) {
    const StageRecord& rec = solution.Node(report.allocation);
    report.allocation[round[0]] = rec.equilibrium.outcome.winner;
    report.prices[round[0]] = rec.equilibrium.outcome.price;
  }
  FinishReport(inst, &report, known_opt);
  return report;
}

namespace {

struct Continuation {
  std::vector<Money> utility;
  Owners owners;
  std::vector<Money> prices;
};

class OutcomeEnumerator {
 public:
  OutcomeEnumerator(const AuctionInstance& inst, OutcomeSetOptions opt) : inst_(inst), opt_(opt) {}

  const std::vector<Continuation>& At(const Owners& owners, int round) {
    std::string key = OwnersKey(owners);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= opt_.max_states) throw std::length_error("state space exceeds max_states");
    std::vector<Continuation> out;
    if (round == static_cast<int>(inst_.rounds.size())) {
      out.push_back({std::vector<Money>(inst_.n(), Money(0)), owners,
                     std::vector<Money>(inst_.m(), Money(0))});
    } else {
      out = Expand(owners, round);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  bool truncated() const { return truncated_; }
  size_t states() const { return memo_.size(); }

 private:
  std::vector<Continuation> Expand(const Owners& owners, int round) {
    const int n = inst_.n();
    const int item = inst_.rounds[round][0];
    std::vector<const std::vector<Continuation>*> child(n);
    for (int j = 0; j < n; ++j) {
      Owners next = owners;
      next[item] = j;
      child[j] = &At(next, round + 1);
    }
    std::vector<Money> marginal(n);
    for (int i = 0; i < n; ++i) {
      marginal[i] = inst_.players[i].Marginal(BundleOf(owners, i), item);
    }
    std::map<std::pair<Owners, std::vector<Money>>, Continuation> found;
    std::vector<size_t> pick(n, 0);
    size_t combos = 0;
    while (true) {
      if (++combos > opt_.max_combinations) {
        truncated_ = true;
        break;
      }
      ExternalityMatrix m;
      m.v.assign(n, std::vector<Money>(n));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          m.v[i][j] = (*child[j])[pick[j]].utility[i] + (i == j ? marginal[i] : Money(0));
        }
      }
      auto add = [&](const StageEquilibrium& eq) {
        const int w = eq.outcome.winner;
        Continuation c = (*child[w])[pick[w]];
        c.utility[w] += marginal[w] - eq.outcome.price;
        c.prices[item] = eq.outcome.price;
        found.emplace(std::make_pair(c.owners, c.utility), std::move(c));
      };
      if (n == 1) {
        add(SinglePlayerStage(inst_.format));
      } else {
        TauReport tau = TauThresholds(m);
        auto outcomes = EnumerateCompatibleOutcomes(m, tau);
        if (outcomes.empty()) add(CanonicalEquilibrium(m, inst_.format));
        for (const auto& c : outcomes) {
          std::vector<Money> prices;
          if (!c.low_open) prices.push_back(c.low);
          if (c.high > c.low) {
            prices.push_back(c.high);
            prices.push_back((c.low + c.high) / 2);
          }
          for (const Money& p : prices) {
            StageEquilibrium eq;
            if (BuildProfileFor(m, tau, c.winner, p, inst_.format, &eq)) add(eq);
          }
        }
      }
      int pos = n - 1;
      while (pos >= 0 && pick[pos] + 1 == child[pos]->size()) pick[pos--] = 0;
      if (pos < 0) break;
      ++pick[pos];
    }
    std::vector<Continuation> out;
    for (auto& [key, c] : found) out.push_back(std::move(c));
    if (out.size() > opt_.max_per_state) {
      truncated_ = true;
      // Keep both welfare extremes.
      std::vector<std::pair<Money, size_t>> order;
      for (size_t k = 0; k < out.size(); ++k) {
        Money w = 0;
        for (int i = 0; i < n; ++i) w += inst_.players[i].Value(BundleOf(out[k].owners, i));
        order.push_back({w, k});
      }
      std::stable_sort(order.begin(), order.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Continuation> kept;
      size_t half = opt_.max_per_state / 2;
      for (size_t k = 0; k < order.size(); ++k) {
        if (k < half || k >= order.size() - (opt_.max_per_state - half)) {
          kept.push_back(out[order[k].second]);
        }
      }
      out.swap(kept);
    }
    return out;
  }

  const AuctionInstance& inst_;
  OutcomeSetOptions opt_;
  std::unordered_map<std::string, std::vector<Continuation>> memo_;
  bool truncated_ = false;
};

}  // namespace

OutcomeSet EnumerateSpeOutcomes(const AuctionInstance& instance, OutcomeSetOptions options) {
  ValidateInstance(instance);
  if (!instance.AllSingletonRounds()) {
    throw std::invalid_argument("multi-item round present; use GridStageEquilibrium");
  }
  OutcomeEnumerator e(instance, options);
  const auto& root = e.At(Owners(instance.m(), -1), 0);
  OutcomeSet set;
  std::optional<Money> opt;
  try {
    opt = BruteForceOptimalAllocation(instance.players, instance.AllItems()).welfare;
  } catch (const std::length_error&) {
  }
  for (const auto& c : root) {
    GameReport r;
    r.allocation = c.owners;
    r.prices = c.prices;
    FinishReport(instance, &r, opt);
    set.outcomes.push_back(std::move(r));
  }
  set.truncated = e.truncated();
  set.states = e.states();
  return set;
}

Owners OwnersAfter(const AuctionInstance& instance, const BidHistory& history) {
  Owners owners(instance.m(), -1);
  for (size_t d = 0; d < history.size(); ++d) owners[instance.rounds[d][0]] = history[d].winner;
  return owners;
}

StrategyProfileOracle ProfileFromSolution(std::shared_ptr<const SpeSolution> solution) {
  StrategyProfileOracle p;
  p.bids = [solution](const BidHistory& h) {
    return solution->Node(OwnersAfter(solution->instance(), h)).equilibrium.bids;
  };
  p.state_key = [solution](const BidHistory& h) {
    return solution->StateKey(OwnersAfter(solution->instance(), h));
  };
  return p;
}

std::string StatusName(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kPass:
      return "pass";
    case VerifyStatus::kFail:
      return "fail";
    case VerifyStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

std::string FullHistoryKey(const BidHistory& h) {
  std::string key;
  for (const auto& o : h) {
    for (const Bid& b : o.bids) key += ToString(b) + ",";
    key += ";";
  }
  return key;
}

class ProfileWalker {
 public:
  ProfileWalker(const AuctionInstance& inst, const StrategyProfileOracle& profile)
      : inst_(inst), profile_(profile) {}

  std::string Key(const BidHistory& h) const {
    std::string k = profile_.state_key ? profile_.state_key(h) : FullHistoryKey(h);
    return std::to_string(h.size()) + "|" + k;
  }

  std::vector<Bid> BidsAt(const BidHistory& h) const {
    std::vector<Bid> b = profile_.bids(h);
    if (static_cast<int>(b.size()) != inst_.n()) {
      throw std::invalid_argument("profile returned the wrong number of bids");
    }
    for (const Bid& x : b) {
      if (x.amount < 0) throw std::invalid_argument("profile returned a negative bid");
    }
    return b;
  }

  // Stage payoff of the round played after h.
  std::vector<Money> StagePayoff(const BidHistory& h, const StageOutcome& o) const {
    std::vector<Money> pay(inst_.n(), Money(0));
    Owners owners = OwnersAfter(inst_, h);
    const int item = inst_.rounds[h.size()][0];
    pay[o.winner] = inst_.players[o.winner].Marginal(BundleOf(owners, o.winner), item) - o.price;
    return pay;
  }

  const std::vector<Money>& Value(const BidHistory& h) {
    std::string key = Key(h);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Money> v(inst_.n(), Money(0));
    if (h.size() < inst_.rounds.size()) {
      StageOutcome o = ResolveStage(BidsAt(h), inst_.format);
      v = StagePayoff(h, o);
      BidHistory next = h;
      next.push_back(o);
      const auto& rest = Value(next);
      for (int i = 0; i < inst_.n(); ++i) v[i] += rest[i];
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

  Money UtilityAfter(const BidHistory& h, const StageOutcome& o, int i) {
    Money u = StagePayoff(h, o)[i];
    BidHistory next = h;
    next.push_back(o);
    return u + Value(next)[i];
  }

 private:
  const AuctionInstance& inst_;
  const StrategyProfileOracle& profile_;
  std::unordered_map<std::string, std::vector<Money>> memo_;
};

std::vector<Bid> DeviationCandidates(const std::vector<Bid>& bids, int i,
                                     const std::vector<Money>& breakpoints, const Money& grid) {
  std::vector<Bid> c{Bid{0, false}};
  Money top = 0;
  for (size_t k = 0; k < bids.size(); ++k) {
    if (static_cast<int>(k) == i) continue;
    c.push_back({bids[k].amount, false});
    c.push_back({bids[k].amount, true});
    top = Max(top, bids[k].amount);
  }
  c.push_back({top + grid, false});
  for (const Money& b : breakpoints) {
    for (const Money& a : {Money(b - grid), b, Money(b + grid)}) {
      if (a < 0) continue;
      c.push_back({a, false});
      c.push_back({a, true});
    }
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

SpeVerification VerifySpe(const AuctionInstance& instance, const StrategyProfileOracle& profile,
                          const VerifyOptions& options) {
  ValidateInstance(instance);
  if (!instance.AllSingletonRounds()) {
    throw std::invalid_argument("profile verification needs single-item rounds");
  }
  const int n = instance.n();
  const size_t rounds = instance.rounds.size();
  ProfileWalker walker(instance, profile);
  SpeVerification result;
  std::set<std::string> visited;
  std::vector<BidHistory> frontier{BidHistory{}};
  visited.insert(walker.Key(BidHistory{}));
  bool capped = false;
  for (size_t head = 0; head < frontier.size(); ++head) {
    BidHistory h = frontier[head];
    if (h.size() >= rounds) continue;
    if (++result.nodes_checked > options.max_nodes) {
      result.status = VerifyStatus::kInconclusive;
      result.note = "node cap reached";
      return result;
    }
    std::vector<Bid> bids = walker.BidsAt(h);
    StageOutcome base = ResolveStage(bids, instance.format);
    std::vector<Money> breakpoints;
    if (profile.breakpoints) breakpoints = profile.breakpoints(h);
    std::vector<StageOutcome> children{base};
    for (int i = 0; i < n; ++i) {
      Money current = walker.UtilityAfter(h, base, i);
      for (const Bid& c : DeviationCandidates(bids, i, breakpoints, options.grid)) {
        std::vector<Bid> trial = bids;
        trial[i] = c;
        StageOutcome o = ResolveStage(trial, instance.format);
        Money u = walker.UtilityAfter(h, o, i);
        if (u > current) {
          result.status = VerifyStatus::kFail;
          result.violation = SpeViolation{h, i, c, u - current};
          return result;
        }
        children.push_back(o);
      }
    }
    if (options.max_depth >= 0 && static_cast<int>(h.size()) + 1 > options.max_depth) {
      capped = true;
      continue;
    }
    for (const auto& o : children) {
      BidHistory next = h;
      next.push_back(o);
      if (visited.insert(walker.Key(next)).second) frontier.push_back(std::move(next));
    }
  }
  if (capped) {
    result.status = VerifyStatus::kInconclusive;
    result.note = "depth cap reached";
  }
  return result;
}

GameReport PlayProfile(const AuctionInstance& instance, const StrategyProfileOracle& profile,
                       std::optional<Money> known_opt) {
  ValidateInstance(instance);
  ProfileWalker walker(instance, profile);
  BidHistory h;
  GameReport report;
  report.allocation.assign(instance.m(), -1);
  report.prices.assign(instance.m(), Money(0));
  while (h.size() < instance.rounds.size()) {
    StageOutcome o = ResolveStage(walker.BidsAt(h), instance.format);
    const int item = instance.rounds[h.size()][0];
    report.allocation[item] = o.winner;
    report.prices[item] = o.price;
    h.push_back(o);
  }
  FinishReport(instance, &report, known_opt);
  return report;
}

namespace {

// Exact integer image of a multi-item stage: payoff[i][a] for every joint
// assignment a of the round's items, scaled by a common denominator.
struct IntStage {
  int n = 0;
  int k = 0;
  std::vector<std::vector<long long>> payoff;
  long long grid = 1;
  Money scale = 1;

  int Encode(const std::vector<int>& winners) const {
    int code = 0;
    for (int x = k - 1; x >= 0; --x) code = code * n + winners[x];
    return code;
  }
};

long long ToScaledInt(const Money& x, const Money& scale) {
  Money y = x * scale;
  if (y.get_den() != 1 || !y.get_num().fits_slong_p()) {
    throw std::length_error("grid stage values do not fit the integer search");
  }
  return y.get_num().get_si();
}

struct GridBid {
  long long amount = 0;
  bool plus = false;
  bool operator==(const GridBid& o) const = default;
};

bool Beats(const GridBid& a, int ia, const GridBid& b, int ib) {
  if (a.amount != b.amount) return a.amount > b.amount;
  if (a.plus != b.plus) return a.plus;
  return ia < ib;
}

// bids[i][x]; returns winner of item x.
int ItemWinner(const std::vector<std::vector<GridBid>>& bids, int x) {
  int w = 0;
  for (int i = 1; i < static_cast<int>(bids.size()); ++i) {
    if (Beats(bids[i][x], i, bids[w][x], w)) w = i;
  }
  return w;
}

long long ProfileUtility(const IntStage& s, const std::vector<std::vector<GridBid>>& bids, int i) {
  std::vector<int> winners(s.k);
  long long paid = 0;
  for (int x = 0; x < s.k; ++x) {
    winners[x] = ItemWinner(bids, x);
    if (winners[x] == i) paid += bids[i][x].amount;
  }
  return s.payoff[i][s.Encode(winners)] - paid;
}

// Exact best response of i on the grid; fills *best_bids when non-null.
long long BestResponse(const IntStage& s, const std::vector<std::vector<GridBid>>& bids, int i,
                       std::vector<GridBid>* best_bids) {
  std::vector<long long> cost(s.k);
  std::vector<GridBid> win_bid(s.k);
  std::vector<int> other(s.k);
  std::vector<bool> can_lose(s.k);
  for (int x = 0; x < s.k; ++x) {
    int top = -1;
    for (int j = 0; j < s.n; ++j) {
      if (j != i && (top < 0 || Beats(bids[j][x], j, bids[top][x], top))) top = j;
    }
    other[x] = top;
    const GridBid& t = bids[top][x];
    GridBid matched{t.amount, true};
    if (Beats(matched, i, t, top)) {
      win_bid[x] = matched;
    } else {
      win_bid[x] = {t.amount + s.grid, false};
    }
    cost[x] = win_bid[x].amount;
    can_lose[x] = Beats(t, top, GridBid{}, i);
  }
  long long best = 0;
  bool have = false;
  std::vector<int> winners(s.k);
  for (int mask = 0; mask < (1 << s.k); ++mask) {
    long long c = 0;
    bool ok = true;
    for (int x = 0; x < s.k; ++x) {
      if ((mask >> x) & 1) {
        winners[x] = i;
        c += cost[x];
      } else {
        if (!can_lose[x]) ok = false;
        winners[x] = other[x];
      }
    }
    if (!ok) continue;
    long long u = s.payoff[i][s.Encode(winners)] - c;
    if (!have || u > best) {
      best = u;
      have = true;
      if (best_bids) {
        best_bids->assign(s.k, GridBid{});
        for (int x = 0; x < s.k; ++x) {
          if ((mask >> x) & 1) (*best_bids)[x] = win_bid[x];
        }
      }
    }
  }
  return best;
}

bool IsGridNash(const IntStage& s, const std::vector<std::vector<GridBid>>& bids) {
  for (int i = 0; i < s.n; ++i) {
    if (BestResponse(s, bids, i, nullptr) > ProfileUtility(s, bids, i)) return false;
  }
  return true;
}

}  // namespace

GridStageResult GridStageEquilibrium(const AuctionInstance& instance, const Owners& state,
                                     const Money& grid, GridOptions options) {
  if (grid <= 0) throw std::invalid_argument("grid step must be positive");
  SpeSolution later(instance, SolveOptions{});
  const int round = later.RoundOf(state);
  if (round >= static_cast<int>(instance.rounds.size())) {
    throw std::invalid_argument("no round left at this state");
  }
  const std::vector<int>& items = instance.rounds[round];
  IntStage s;
  s.n = instance.n();
  s.k = static_cast<int>(items.size());
  if (s.k > 8) throw std::length_error("too many simultaneous items");
  int joint = 1;
  for (int x = 0; x < s.k; ++x) joint *= s.n;

  // Payoffs in exact arithmetic first.
  std::vector<std::vector<Money>> payoff(s.n, std::vector<Money>(joint));
  std::vector<int> winners(s.k, 0);
  for (int code = 0; code < joint; ++code) {
    int c = code;
    Owners next = state;
    for (int x = 0; x < s.k; ++x) {
      winners[x] = c % s.n;
      c /= s.n;
      next[items[x]] = winners[x];
    }
    std::vector<Money> cont = later.Continuation(next);
    for (int i = 0; i < s.n; ++i) {
      payoff[i][code] = instance.players[i].Value(BundleOf(next, i)) -
                        instance.players[i].Value(BundleOf(state, i)) + cont[i];
    }
  }
  mpz_class den = grid.get_den();
  for (const auto& row : payoff) {
    for (const Money& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  }
  s.scale = Money(den);
  s.grid = ToScaledInt(grid, s.scale);
  s.payoff.assign(s.n, std::vector<long long>(joint));
  long long top_gain = 0;
  for (int i = 0; i < s.n; ++i) {
    for (int code = 0; code < joint; ++code) s.payoff[i][code] = ToScaledInt(payoff[i][code], s.scale);
    auto [lo, hi] = std::minmax_element(s.payoff[i].begin(), s.payoff[i].end());
    top_gain = std::max(top_gain, *hi - *lo);
  }
  const long long steps = top_gain / s.grid + 1;

  GridStageResult result;
  auto to_money = [&](const std::vector<std::vector<GridBid>>& bids) {
    result.bids.assign(s.n, std::vector<Bid>(s.k));
    result.round_owners.assign(s.k, 0);
    result.prices.assign(s.k, Money(0));
    for (int x = 0; x < s.k; ++x) {
      for (int i = 0; i < s.n; ++i) {
        result.bids[i][x] = {Money(static_cast<long>(bids[i][x].amount)) / s.scale, bids[i][x].plus};
      }
      int w = ItemWinner(bids, x);
      result.round_owners[x] = w;
      result.prices[x] = Money(static_cast<long>(bids[w][x].amount)) / s.scale;
    }
  };

  // Per-item options: nobody bids, or winner w at p+ over supporter t at p.
  struct ItemOption {
    int winner = -1;
    int supporter = -1;
    long long price = 0;
  };
  std::vector<ItemOption> per_item{ItemOption{}};
  for (int w = 0; w < s.n; ++w) {
    for (int t = 0; t < s.n; ++t) {
      if (t == w) continue;
      for (long long q = 0; q <= steps; ++q) per_item.push_back({w, t, q * s.grid});
    }
  }
  double total = 1;
  for (int x = 0; x < s.k; ++x) total *= static_cast<double>(per_item.size());
  if (total > static_cast<double>(options.max_profiles)) {
    throw std::length_error("grid search exceeds max_profiles");
  }
  std::vector<size_t> pick(s.k, 0);
  std::vector<std::vector<GridBid>> bids(s.n, std::vector<GridBid>(s.k));
  while (true) {
    for (auto& row : bids) std::fill(row.begin(), row.end(), GridBid{});
    for (int x = 0; x < s.k; ++x) {
      const ItemOption& o = per_item[pick[x]];
      if (o.winner < 0) continue;
      bids[o.winner][x] = {o.price, true};
      bids[o.supporter][x] = {o.price, false};
    }
    ++result.profiles_checked;
    if (IsGridNash(s, bids)) {
      result.found = true;
      to_money(bids);
      return result;
    }
    int pos = s.k - 1;
    while (pos >= 0 && pick[pos] + 1 == per_item.size()) pick[pos--] = 0;
    if (pos < 0) break;
    ++pick[pos];
  }

  // No equilibrium in the family: record a best-response cycle from zero bids.
  for (auto& row : bids) std::fill(row.begin(), row.end(), GridBid{});
  std::map<std::vector<long long>, size_t> seen;
  std::vector<GridBestResponseStep> steps_taken;
  auto snapshot = [&]() {
    std::vector<long long> key;
    for (const auto& row : bids) {
      for (const auto& b : row) key.push_back(2 * b.amount + b.plus);
    }
    return key;
  };
  seen[snapshot()] = 0;
  int quiet = 0;
  for (size_t step = 0; step < options.max_dynamics_steps && quiet < s.n; ++step) {
    int i = static_cast<int>(step % s.n);
    std::vector<GridBid> br;
    long long best = BestResponse(s, bids, i, &br);
    if (best <= ProfileUtility(s, bids, i)) {
      ++quiet;
      continue;
    }
    quiet = 0;
    bids[i] = br;
    GridBestResponseStep rec;
    rec.player = i;
    for (const auto& b : br) rec.bids.push_back({Money(static_cast<long>(b.amount)) / s.scale, b.plus});
    steps_taken.push_back(rec);
    auto key = snapshot();
    if (auto it = seen.find(key); it != seen.end()) {
      result.cycle.assign(steps_taken.begin() + static_cast<long>(it->second), steps_taken.end());
      return result;
    }
    seen[key] = steps_taken.size();
  }
  if (quiet >= s.n) {
    // Dynamics settled on an equilibrium outside the searched family.
    result.found = true;
    to_money(bids);
  }
  return result;
}

int DefaultJobs() {
  if (const char* env = std::getenv("SEQAUCTION_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

struct SweepItem {
  Money ratio = 1;
  bool enumerated = false;
  bool truncated = false;
};

SweepItem SolveOne(const AuctionInstance& inst, const SweepOptions& options) {
  SweepItem item;
  double states = 1;
  for (int j = 0; j < inst.m(); ++j) states *= inst.n();
  std::vector<GameReport> reports;
  if (states <= options.enumerate_all_limit) {
    OutcomeSet set = EnumerateSpeOutcomes(inst);
    item.enumerated = true;
    item.truncated = set.truncated;
    reports = std::move(set.outcomes);
  } else {
    reports.push_back(Play(SolveSpe(inst)));
  }
  for (const auto& r : reports) {
    if (!r.opt) throw std::length_error("sweep instance too large for the optimum oracle");
    if (r.welfare == 0) {
      if (*r.opt > 0) throw std::logic_error("equilibrium with zero welfare");
      continue;
    }
    item.ratio = Max(item.ratio, *r.opt / r.welfare);
  }
  return item;
}

}  // namespace

SweepResult PoaSweep(const InstanceGenerator& generator, const SweepOptions& options) {
  std::vector<SweepItem> items(options.count);
  std::atomic<int> next{0};
  std::vector<std::string> errors(options.count);
  auto work = [&]() {
    for (int k = next++; k < options.count; k = next++) {
      try {
        std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(k));
        items[k] = SolveOne(generator(rng), options);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  int jobs = std::max(1, std::min(options.jobs, options.count));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error("sweep failed: " + e);
  }
  SweepResult r;
  r.instances = options.count;
  r.histogram.assign(9, 0);
  for (int k = 0; k < options.count; ++k) {
    const SweepItem& it = items[k];
    if (r.worst_index < 0 || it.ratio > r.worst_ratio) {
      r.worst_ratio = it.ratio;
      r.worst_index = k;
    }
    r.enumerated += it.enumerated;
    r.truncated += it.truncated;
    Money b = (it.ratio - 1) * 4;
    mpz_class f = b.get_num() / b.get_den();
    long bucket = std::min<long>(8, f.get_si());
    ++r.histogram[bucket];
  }
  return r;
}

}  // namespace seqauction
