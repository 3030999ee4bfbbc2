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

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace seqauction {

std::string FormatName(PriceFormat f) { return f == PriceFormat::kFirst ? "first" : "second"; }

PriceFormat ParseFormat(const std::string& name) {
  if (name == "first") return PriceFormat::kFirst;
  if (name == "second") return PriceFormat::kSecond;
  throw std::invalid_argument("unknown price format: " + name);
}

std::string ToString(const Bid& b) { return ToString(b.amount) + (b.plus ? "+" : ""); }

void ValidateMatrix(const ExternalityMatrix& m) {
  if (m.n() < 2) throw std::invalid_argument("externality matrix needs at least 2 players");
  for (const auto& row : m.v) {
    if (static_cast<int>(row.size()) != m.n()) {
      throw std::invalid_argument("externality matrix must be square");
    }
  }
}

StageOutcome ResolveStage(const std::vector<Bid>& bids, PriceFormat format) {
  if (bids.empty()) throw std::invalid_argument("no bids");
  StageOutcome out;
  out.bids = bids;
  int w = 0;
  for (int i = 1; i < static_cast<int>(bids.size()); ++i) {
    if (bids[i] > bids[w]) w = i;
  }
  out.winner = w;
  if (format == PriceFormat::kFirst) {
    out.price = bids[w].amount;
  } else {
    out.price = 0;
    for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
      if (i != w && bids[i].amount > out.price) out.price = bids[i].amount;
    }
  }
  return out;
}

Money StageUtility(const ExternalityMatrix& m, const StageOutcome& outcome, int i) {
  Money u = m(i, outcome.winner);
  if (i == outcome.winner) u -= outcome.price;
  return u;
}

ExternalityMatrix Normalize(const ExternalityMatrix& m) {
  ExternalityMatrix out = m;
  for (auto& row : out.v) {
    if (row.empty()) continue;
    Money lo = *std::min_element(row.begin(), row.end());
    for (auto& x : row) x -= lo;
  }
  return out;
}

bool IsToxic(const ExternalityMatrix& m) {
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (i != j && !(m(i, i) < m(i, j))) return false;
    }
  }
  return true;
}

int OverbiddingGraph::InDegree(int j, const std::vector<bool>& alive) const {
  int d = 0;
  for (size_t i = 0; i < edge.size(); ++i) {
    if (alive[i] && edge[i][j]) ++d;
  }
  return d;
}

int OverbiddingGraph::OutDegree(int i, const std::vector<bool>& alive) const {
  int d = 0;
  for (size_t j = 0; j < edge.size(); ++j) {
    if (alive[j] && edge[i][j]) ++d;
  }
  return d;
}

OverbiddingGraph BuildOverbiddingGraph(const ExternalityMatrix& m, const Money& p) {
  const int n = m.n();
  OverbiddingGraph g;
  g.price = p;
  g.edge.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && m(j, j) - p > m(j, i)) g.edge[i][j] = true;
    }
  }
  return g;
}

std::vector<Money> Breakpoints(const ExternalityMatrix& m) {
  std::vector<Money> out{Money(0)};
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (i == j) continue;
      Money d = m(j, j) - m(j, i);
      if (d > 0) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TauReport TauThresholds(const ExternalityMatrix& m) {
  ValidateMatrix(m);
  const int n = m.n();
  TauReport r;
  r.tau.assign(n, 0);
  r.gamma.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) r.gamma[i] = Max(r.gamma[i], m(i, i) - m(i, j));
    }
  }
  std::vector<bool> alive(n, true);
  std::vector<bool> logged(n, false);
  int remaining = n;
  // The graph only changes at breakpoints, so evaluating there is exact.
  for (const Money& p : Breakpoints(m)) {
    OverbiddingGraph g = BuildOverbiddingGraph(m, p);
    for (int i = 0; i < n; ++i) {
      if (!alive[i] || logged[i] || g.OutDegree(i, alive) != 0) continue;
      logged[i] = true;
      int supporter = -1;
      for (int j = 0; j < n; ++j) {
        if (j != i && alive[j] && m(i, i) - p >= m(i, j)) {
          supporter = j;
          break;
        }
      }
      r.events.push_back({i, p, supporter});
    }
    bool removed = true;
    while (removed && remaining > 0) {
      removed = false;
      for (int j = 0; j < n; ++j) {
        if (alive[j] && g.InDegree(j, alive) == 0) {
          alive[j] = false;
          --remaining;
          r.tau[j] = p;
          r.removal_order.push_back(j);
          removed = true;
          break;
        }
      }
    }
    if (remaining == 0) break;
  }
  return r;
}

bool CompatibleOutcome::ContainsPrice(const Money& p) const {
  if (p < low || (low_open && p == low)) return false;
  if (p > high || (high_open && p == high)) return false;
  return true;
}

namespace {

// Lowest price at which nobody wants to overbid `winner`.
Money OutDegreeZeroFrom(const ExternalityMatrix& m, int winner) {
  Money lo = 0;
  for (int j = 0; j < m.n(); ++j) {
    if (j != winner) lo = Max(lo, m(j, j) - m(j, winner));
  }
  return lo;
}

// At price 0 the winner bids 0+ and falls back to the player the tie-break
// would pick if it dropped to 0; that player must not be preferred.
int ZeroPriceSupporter(const ExternalityMatrix& m, int winner) {
  for (int j = 0; j < m.n(); ++j) {
    if (j == winner || (j != 0 && j < winner)) continue;
    if (m(winner, winner) >= m(winner, j)) return j;
  }
  return -1;
}

int PositivePriceSupporter(const ExternalityMatrix& m, const TauReport& tau, int winner,
                           const Money& p) {
  for (int j = 0; j < m.n(); ++j) {
    if (j != winner && tau.tau[j] >= p && m(winner, winner) - p >= m(winner, j)) return j;
  }
  return -1;
}

Money SmallestPositiveBreakpoint(const ExternalityMatrix& m) {
  auto b = Breakpoints(m);
  return b.size() > 1 ? b[1] : Money(0);
}

// Winner i with nobody wanting to overbid it at price 0, realised at a small
// positive price so that dropping out hands the item to a player i ranks
// strictly below winning.
StageEquilibrium ZeroTieFallback(const ExternalityMatrix& m, PriceFormat format) {
  const int n = m.n();
  const Money eta = SmallestPositiveBreakpoint(m);
  for (int i = 0; i < n; ++i) {
    if (OutDegreeZeroFrom(m, i) != 0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || !(m(i, i) > m(i, j))) continue;
      StageEquilibrium eq;
      eq.bids.assign(n, Bid{});
      eq.bids[i] = {eta, true};
      eq.bids[j] = {eta, false};
      eq.outcome = ResolveStage(eq.bids, format);
      eq.supporter = j;
      eq.compatible = false;
      return eq;
    }
  }
  throw std::logic_error("no stage equilibrium construction applies");
}

}  // namespace

std::vector<CompatibleOutcome> EnumerateCompatibleOutcomes(const ExternalityMatrix& m) {
  return EnumerateCompatibleOutcomes(m, TauThresholds(m));
}

std::vector<CompatibleOutcome> EnumerateCompatibleOutcomes(const ExternalityMatrix& m,
                                                           const TauReport& tau) {
  const int n = m.n();
  const bool toxic = IsToxic(m);
  std::vector<CompatibleOutcome> out;
  for (int i = 0; i < n; ++i) {
    Money lo = OutDegreeZeroFrom(m, i);
    if (lo > tau.tau[i]) continue;
    // Supporters bid the price, so it may not exceed their tau nor make the
    // winner prefer losing to them.
    Money hi;
    bool have_hi = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Money cap = Min(tau.tau[j], m(i, i) - m(i, j));
      if (!have_hi || cap > hi) {
        hi = cap;
        have_hi = true;
      }
    }
    hi = Min(hi, tau.tau[i]);
    bool zero_ok = lo == 0 && (i == 0 || ZeroPriceSupporter(m, i) >= 0);
    bool positive_ok = hi > 0 && hi >= lo;
    if (!zero_ok && !positive_ok) continue;
    CompatibleOutcome c;
    c.winner = i;
    c.low = lo;
    c.high = positive_ok ? hi : Money(0);
    c.low_open = lo == 0 && !zero_ok;
    c.toxic = toxic;
    out.push_back(c);
  }
  return out;
}

bool BuildProfileFor(const ExternalityMatrix& m, const TauReport& tau, int winner, const Money& p,
                     PriceFormat format, StageEquilibrium* out) {
  const int n = m.n();
  if (p < OutDegreeZeroFrom(m, winner) || p > tau.tau[winner]) return false;
  std::vector<Bid> bids(n);
  int supporter = -1;
  if (p == 0) {
    if (winner != 0) {
      supporter = ZeroPriceSupporter(m, winner);
      if (supporter < 0) return false;
      bids[winner] = {0, true};
      if (supporter > winner) bids[supporter] = {0, true};
    }
  } else {
    supporter = PositivePriceSupporter(m, tau, winner, p);
    if (supporter < 0) return false;
    bids[winner] = {p, true};
    bids[supporter] = {p, false};
  }
  out->bids = bids;
  out->outcome = ResolveStage(bids, format);
  out->supporter = supporter;
  return true;
}

StageEquilibrium CanonicalEquilibrium(const ExternalityMatrix& m, PriceFormat format) {
  ValidateMatrix(m);
  TauReport tau = TauThresholds(m);
  auto outcomes = EnumerateCompatibleOutcomes(m, tau);
  if (outcomes.empty()) return ZeroTieFallback(m, format);
  const CompatibleOutcome* best = nullptr;
  Money best_price;
  for (const auto& c : outcomes) {
    Money p = c.low;
    if (c.low_open) {
      // Open at 0: the first positive breakpoint inside the interval.
      bool found = false;
      for (const Money& b : Breakpoints(m)) {
        if (b > 0 && c.ContainsPrice(b)) {
          p = b;
          found = true;
          break;
        }
      }
      if (!found) p = c.high;
    }
    if (best == nullptr || p < best_price) {
      best = &c;
      best_price = p;
    }
  }
  StageEquilibrium eq;
  if (!BuildProfileFor(m, tau, best->winner, best_price, format, &eq)) {
    throw std::logic_error("compatible outcome without a supporting profile");
  }
  return eq;
}

AscendingResult AscendingEquilibrium(const ExternalityMatrix& m, const Money& epsilon,
                                     PriceFormat format) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  ValidateMatrix(m);
  const int n = m.n();
  AscendingResult r;
  if (IsToxic(m)) {
    r.toxic = true;
    r.equilibrium.bids.assign(n, Bid{});
    r.equilibrium.outcome = ResolveStage(r.equilibrium.bids, format);
    return r;
  }
  int i = -1, j = -1;
  for (int a = 0; a < n && i < 0; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && m(a, a) >= m(a, b)) {
        i = a;
        j = b;
        break;
      }
    }
  }
  Money p = 0;
  std::set<std::tuple<int, int, Money>> seen;
  seen.insert({i, j, p});
  r.trace.push_back({i, j, p});
  while (true) {
    int k = -1;
    for (int c = 0; c < n; ++c) {
      if (c != i && m(c, c) - p > m(c, i)) {
        k = c;
        break;
      }
    }
    if (k < 0) break;
    if (seen.count({k, i, p})) p += epsilon;
    j = i;
    i = k;
    seen.insert({i, j, p});
    r.trace.push_back({i, j, p});
  }
  std::vector<Bid> bids(n);
  int supporter = j;
  if (p == 0) {
    int z = i == 0 ? 0 : ZeroPriceSupporter(m, i);
    if (z < 0 && m(i, i) > m(i, j)) {
      // Dropping to 0 would hand the item to player 0; move just off zero.
      Money eta = Min(epsilon, m(i, i) - m(i, j));
      bids[i] = {eta, true};
      bids[j] = {eta, false};
      r.equilibrium.compatible = false;
    } else if (z < 0) {
      r.equilibrium = CanonicalEquilibrium(m, format);
      return r;
    } else if (i != 0) {
      supporter = z;
      bids[i] = {0, true};
      if (supporter > i) bids[supporter] = {0, true};
    }
  } else {
    bids[i] = {p, true};
    bids[j] = {p, false};
  }
  r.equilibrium.bids = bids;
  r.equilibrium.outcome = ResolveStage(bids, format);
  r.equilibrium.supporter = supporter;
  return r;
}

Deviation FindStageDeviation(const ExternalityMatrix& m, const std::vector<Bid>& bids,
                             PriceFormat format) {
  const int n = m.n();
  StageOutcome base = ResolveStage(bids, format);
  for (int i = 0; i < n; ++i) {
    Money current = StageUtility(m, base, i);
    std::vector<Bid> candidates{Bid{0, false}};
    Money top = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      candidates.push_back({bids[k].amount, false});
      candidates.push_back({bids[k].amount, true});
      top = Max(top, bids[k].amount);
    }
    Money best_gain = 0;
    for (const Bid& c : candidates) {
      std::vector<Bid> trial = bids;
      trial[i] = c;
      Money gain = StageUtility(m, ResolveStage(trial, format), i) - current;
      best_gain = Max(best_gain, gain);
    }
    // Winning just above every opponent costs `top` in the limit under both
    // formats.
    best_gain = Max(best_gain, m(i, i) - top - current);
    if (best_gain > 0) return {i, best_gain};
  }
  return {};
}

bool VerifyStageNash(const ExternalityMatrix& m, const std::vector<Bid>& bids,
                     PriceFormat format) {
  ValidateMatrix(m);
  if (static_cast<int>(bids.size()) != m.n()) throw std::invalid_argument("bid count mismatch");
  return FindStageDeviation(m, bids, format).player < 0;
}

bool IsEnvyFreeSecondPrice(const ExternalityMatrix& m, const std::vector<Bid>& bids) {
  if (!VerifyStageNash(m, bids, PriceFormat::kSecond)) {
    throw std::invalid_argument("bids are not a second-price equilibrium");
  }
  StageOutcome o = ResolveStage(bids, PriceFormat::kSecond);
  for (int k = 0; k < m.n(); ++k) {
    if (k != o.winner && m(k, k) - o.price > m(k, o.winner)) return false;
  }
  return true;
}

}  // namespace seqauction
