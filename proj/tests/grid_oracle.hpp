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

#ifndef SEQAUCTION_TESTS_GRID_ORACLE_HPP_
#define SEQAUCTION_TESTS_GRID_ORACLE_HPP_

// Brute-force references for the single-item auction, written against
// plain integers so they share no code with the library solvers.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace seqauction::testing {

// Integer matrix scaled so that every entry is a whole number of grid steps.
using IntMatrix = std::vector<std::vector<long>>;

struct GridBid {
  long amount;
  int plus;
};

inline long Key(const GridBid& b) { return 2 * b.amount + b.plus; }

inline int GridWinner(const std::vector<GridBid>& bids) {
  int w = 0;
  for (int i = 1; i < static_cast<int>(bids.size()); ++i) {
    if (Key(bids[i]) > Key(bids[w])) w = i;
  }
  return w;
}

inline long GridUtility(const IntMatrix& v, const std::vector<GridBid>& bids, int i) {
  int w = GridWinner(bids);
  return v[i][w] - (i == w ? bids[w].amount : 0);
}

// Pure first-price equilibria whose bids are multiples of `step` (in the
// matrix's units) and at most cap[i]; deviations range over every multiple
// of 1 up to `dev_max`, so `step` should be at least 2 for the deviation
// grid to be finer than the profile grid. Returns (winner, price) pairs.
inline std::set<std::pair<int, long>> GridEquilibria(const IntMatrix& v, long step,
                                                     const std::vector<long>& cap, long dev_max) {
  const int n = static_cast<int>(v.size());
  std::vector<std::vector<GridBid>> options(n);
  for (int i = 0; i < n; ++i) {
    for (long a = 0; a <= cap[i]; a += step) {
      options[i].push_back({a, 0});
      options[i].push_back({a, 1});
    }
  }
  std::set<std::pair<int, long>> found;
  std::vector<size_t> idx(n, 0);
  std::vector<GridBid> bids(n);
  while (true) {
    for (int i = 0; i < n; ++i) bids[i] = options[i][idx[i]];
    bool nash = true;
    for (int i = 0; i < n && nash; ++i) {
      long current = GridUtility(v, bids, i);
      GridBid keep = bids[i];
      for (long a = 0; a <= dev_max && nash; ++a) {
        for (int plus = 0; plus < 2 && nash; ++plus) {
          bids[i] = {a, plus};
          if (GridUtility(v, bids, i) > current) nash = false;
        }
      }
      bids[i] = keep;
    }
    if (nash) {
      int w = GridWinner(bids);
      found.insert({w, bids[w].amount});
    }
    int pos = n - 1;
    while (pos >= 0 && idx[pos] + 1 == options[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
    ++idx[pos];
  }
  return found;
}

// Iterated elimination of weakly dominated bids on the grid {0, 1, ..., top}
// (first price, lowest index wins ties). One player at a time drops every
// bid weakly dominated by a remaining bid, until nothing changes. Returns
// the largest surviving bid per player.
inline std::vector<long> GridEliminationMax(const IntMatrix& v, long top) {
  const int n = static_cast<int>(v.size());
  std::vector<std::vector<long>> s(n);
  for (int i = 0; i < n; ++i) {
    for (long a = 0; a <= top; ++a) s[i].push_back(a);
  }
  auto utility = [&](int i, long bid, const std::vector<long>& others) {
    // others has n entries; others[i] is ignored.
    int w = -1;
    long best = -1;
    for (int k = 0; k < n; ++k) {
      long b = k == i ? bid : others[k];
      if (b > best) {
        best = b;
        w = k;
      }
    }
    return v[i][w] - (w == i ? bid : 0);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      // All opponent profiles from the current sets.
      std::vector<std::vector<long>> profiles{std::vector<long>(n, 0)};
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        std::vector<std::vector<long>> next;
        for (const auto& p : profiles) {
          for (long b : s[k]) {
            auto q = p;
            q[k] = b;
            next.push_back(q);
          }
        }
        profiles.swap(next);
      }
      std::vector<long> keep;
      for (long b : s[i]) {
        bool dominated = false;
        for (long c : s[i]) {
          if (c == b) continue;
          bool weakly = true, strictly = false;
          for (const auto& p : profiles) {
            long ub = utility(i, b, p), uc = utility(i, c, p);
            if (uc < ub) {
              weakly = false;
              break;
            }
            if (uc > ub) strictly = true;
          }
          if (weakly && strictly) {
            dominated = true;
            break;
          }
        }
        if (!dominated) keep.push_back(b);
      }
      if (keep.size() != s[i].size()) {
        s[i] = keep;
        changed = true;
      }
    }
  }
  std::vector<long> out(n);
  for (int i = 0; i < n; ++i) out[i] = *std::max_element(s[i].begin(), s[i].end());
  return out;
}

}  // namespace seqauction::testing

#endif  // SEQAUCTION_TESTS_GRID_ORACLE_HPP_
