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

#include "seqauction/matroid.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace seqauction {

std::vector<int> Members(ElementSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

ElementSet SetOf(const std::vector<int>& elements) {
  ElementSet s = 0;
  for (int e : elements) {
    if (e < 0 || e >= 32) throw std::out_of_range("element index out of range");
    s |= ElementSet{1} << e;
  }
  return s;
}

namespace {

constexpr int kMaxElements = 24;

bool Has(ElementSet s, int e) { return (s >> e) & 1U; }

std::vector<std::string> DefaultNames(int size, std::vector<std::string> names) {
  if (size < 0 || size > kMaxElements) {
    throw std::invalid_argument("matroid ground set must have at most 24 elements");
  }
  if (names.empty()) {
    for (int e = 0; e < size; ++e) names.push_back("e" + std::to_string(e + 1));
  }
  if (static_cast<int>(names.size()) != size) {
    throw std::invalid_argument("element name count does not match ground set");
  }
  return names;
}

ElementSet Full(int size) { return size == 32 ? ~ElementSet{0} : (ElementSet{1} << size) - 1; }

// Calls f on every k-subset of `pool` in increasing bitmask order.
void ForEachSubsetOfSize(ElementSet pool, int k, const std::function<void(ElementSet)>& f) {
  std::vector<int> items = Members(pool);
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    ElementSet s = 0;
    for (int i : idx) s |= ElementSet{1} << items[i];
    f(s);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

bool Matroid::Base::IndependentRaw(ElementSet s) const {
  switch (kind) {
    case MatroidKind::kGraphical: {
      std::vector<int> parent(vertices);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (int e : Members(s)) {
        int a = find(edges[e].first), b = find(edges[e].second);
        if (a == b) return false;
        parent[a] = b;
      }
      return true;
    }
    case MatroidKind::kUniform:
      return std::popcount(s) <= uniform_rank;
    case MatroidKind::kExplicit:
      if (s == 0) return true;
      for (ElementSet t : listed) {
        if ((s & ~t) == 0) return true;
      }
      return false;
  }
  return false;
}

Matroid Matroid::Graphical(int vertices, std::vector<std::pair<int, int>> edges,
                           std::vector<std::string> names) {
  auto base = std::make_shared<Base>();
  base->kind = MatroidKind::kGraphical;
  base->names = DefaultNames(static_cast<int>(edges.size()), std::move(names));
  if (vertices < 1) throw std::invalid_argument("graph needs a vertex");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices) {
      throw std::out_of_range("edge endpoint out of range");
    }
  }
  base->vertices = vertices;
  base->edges = std::move(edges);
  const int size = static_cast<int>(base->names.size());
  return Matroid(std::move(base), Full(size), 0);
}

Matroid Matroid::Uniform(int size, int rank, std::vector<std::string> names) {
  if (rank < 0 || rank > size) throw std::invalid_argument("uniform rank out of range");
  auto base = std::make_shared<Base>();
  base->kind = MatroidKind::kUniform;
  base->names = DefaultNames(size, std::move(names));
  base->uniform_rank = rank;
  return Matroid(std::move(base), Full(size), 0);
}

Matroid Matroid::Explicit(int size, std::vector<ElementSet> independent,
                          std::vector<std::string> names) {
  auto base = std::make_shared<Base>();
  base->kind = MatroidKind::kExplicit;
  base->names = DefaultNames(size, std::move(names));
  for (ElementSet s : independent) {
    if (s & ~Full(size)) throw std::out_of_range("independent set names an unknown element");
  }
  base->listed = std::move(independent);
  return Matroid(std::move(base), Full(size), 0);
}

int Matroid::Index(const std::string& name) const {
  for (int e = 0; e < size(); ++e) {
    if (base_->names[e] == name) return e;
  }
  return -1;
}

bool Matroid::Independent(ElementSet s) const {
  if (s & ~ground_) return false;
  return base_->IndependentRaw(s | contracted_);
}

int Matroid::Rank(ElementSet s) const {
  s &= ground_;
  ElementSet indep = 0;
  for (int e : Members(s)) {
    if (Independent(indep | (ElementSet{1} << e))) indep |= ElementSet{1} << e;
  }
  return std::popcount(indep);
}

Matroid Matroid::Contract(ElementSet x) const {
  x &= ground_;
  ElementSet indep = 0;
  for (int e : Members(x)) {
    if (Independent(indep | (ElementSet{1} << e))) indep |= ElementSet{1} << e;
  }
  return Matroid(base_, ground_ & ~x, contracted_ | indep);
}

Matroid Matroid::Delete(ElementSet x) const { return Matroid(base_, ground_ & ~x, contracted_); }

std::vector<ElementSet> Matroid::Bases() const {
  std::vector<ElementSet> out;
  ForEachSubsetOfSize(ground_, Rank(), [&](ElementSet s) {
    if (Independent(s)) out.push_back(s);
  });
  std::sort(out.begin(), out.end(), LexLess);
  return out;
}

std::vector<ElementSet> Matroid::Circuits() const {
  std::vector<ElementSet> out;
  const int n = std::popcount(ground_);
  for (int k = 1; k <= std::min(n, Rank() + 1); ++k) {
    ForEachSubsetOfSize(ground_, k, [&](ElementSet s) {
      if (Independent(s)) return;
      for (int e : Members(s)) {
        if (!Independent(s & ~(ElementSet{1} << e))) return;
      }
      out.push_back(s);
    });
  }
  std::sort(out.begin(), out.end(), LexLess);
  return out;
}

std::vector<ElementSet> Matroid::Cocircuits() const {
  // Complements of hyperplanes; every hyperplane is the closure of an
  // independent set of size rank - 1.
  const int r = Rank();
  std::vector<ElementSet> out;
  if (r == 0) return out;
  ForEachSubsetOfSize(ground_, r - 1, [&](ElementSet s) {
    if (!Independent(s)) return;
    ElementSet closure = s;
    for (int e : Members(ground_ & ~s)) {
      if (!Independent(s | (ElementSet{1} << e))) closure |= ElementSet{1} << e;
    }
    out.push_back(ground_ & ~closure);
  });
  std::sort(out.begin(), out.end(), LexLess);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Matroid::CheckAxioms() const {
  if (std::popcount(ground_) > 12) {
    throw std::invalid_argument("axiom check is exhaustive; needs at most 12 elements");
  }
  if (!Independent(0)) return false;
  std::vector<ElementSet> indep;
  for (ElementSet s = ground_;; s = (s - 1) & ground_) {
    if (Independent(s)) {
      indep.push_back(s);
      for (int e : Members(s)) {
        if (!Independent(s & ~(ElementSet{1} << e))) return false;
      }
    }
    if (s == 0) break;
  }
  for (ElementSet a : indep) {
    for (ElementSet b : indep) {
      if (std::popcount(a) <= std::popcount(b)) continue;
      bool augments = false;
      for (int e : Members(a & ~b)) {
        if (Independent(b | (ElementSet{1} << e))) {
          augments = true;
          break;
        }
      }
      if (!augments) return false;
    }
  }
  return true;
}

bool LexLess(ElementSet a, ElementSet b) {
  std::vector<int> x = Members(a), y = Members(b);
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

ElementSet FindCocircuit(const Matroid& m, ElementSet x) {
  if (!m.Independent(x)) throw std::invalid_argument("won set is not independent");
  Matroid c = m.Contract(x);
  if (c.Rank() == 0) throw std::invalid_argument("won set is already a basis");
  return c.Cocircuits().front();
}

std::string ModeName(MatroidMode mode) {
  return mode == MatroidMode::kDirect ? "direct" : "procurement";
}

MatroidMode ParseMode(const std::string& s) {
  if (s == "direct") return MatroidMode::kDirect;
  if (s == "procurement") return MatroidMode::kProcurement;
  throw std::invalid_argument("unknown matroid mode: " + s);
}

bool WeightedMatroid::DistinctWeights() const {
  std::vector<int> g = Members(matroid.ground());
  for (size_t a = 0; a < g.size(); ++a) {
    for (size_t b = a + 1; b < g.size(); ++b) {
      if (weight[g[a]] == weight[g[b]]) return false;
    }
  }
  return true;
}

void ValidateWeighted(const WeightedMatroid& w) {
  if (static_cast<int>(w.weight.size()) != w.matroid.size()) {
    throw std::invalid_argument("one weight per element required");
  }
  if (w.mode == MatroidMode::kProcurement) {
    for (ElementSet d : w.matroid.Cocircuits()) {
      if (std::popcount(d) < 2) {
        throw std::invalid_argument("procurement needs every co-circuit to have 2+ elements; " +
                                    w.matroid.name(std::countr_zero(d)) + " is a coloop");
      }
    }
  }
}

namespace {

// True when a beats b for the mode (higher in direct, lower in procurement).
bool Better(MatroidMode mode, const Money& a, const Money& b) {
  return mode == MatroidMode::kDirect ? a > b : a < b;
}

Money WeightOf(const WeightedMatroid& w, ElementSet s) {
  Money total = 0;
  for (int e : Members(s)) total += w.weight[e];
  return total;
}

int BestIn(const WeightedMatroid& w, ElementSet s) {
  int best = -1;
  for (int e : Members(s)) {
    if (best < 0 || Better(w.mode, w.weight[e], w.weight[best])) best = e;
  }
  return best;
}

WeightedMatroid WithMatroid(const WeightedMatroid& w, Matroid m) {
  return WeightedMatroid{std::move(m), w.weight, w.mode};
}

const VcgPrice kInfinite{true, Money(0)};

}  // namespace

BasisResult GreedyOptBasis(const WeightedMatroid& w) {
  BasisResult r;
  while (w.matroid.Rank(r.basis) < w.matroid.Rank()) {
    int e = BestIn(w, FindCocircuit(w.matroid, r.basis));
    r.basis |= ElementSet{1} << e;
  }
  r.weight = WeightOf(w, r.basis);
  return r;
}

BasisResult SortGreedyBasis(const WeightedMatroid& w) {
  std::vector<int> order = Members(w.matroid.ground());
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return Better(w.mode, w.weight[a], w.weight[b]); });
  BasisResult r;
  for (int e : order) {
    if (w.matroid.Independent(r.basis | (ElementSet{1} << e))) r.basis |= ElementSet{1} << e;
  }
  r.weight = WeightOf(w, r.basis);
  return r;
}

BasisResult BruteForceBasis(const WeightedMatroid& w) {
  BasisResult best;
  bool have = false;
  for (ElementSet b : w.matroid.Bases()) {  // lexicographic order
    Money v = WeightOf(w, b);
    if (!have || Better(w.mode, v, best.weight)) {
      best = {b, v};
      have = true;
    }
  }
  return best;
}

std::string ToString(const VcgPrice& p) { return p.infinite ? "INFINITE" : ToString(p.value); }

VcgBreakdown VcgPriceBreakdown(const WeightedMatroid& w, int i) {
  const Matroid& m = w.matroid;
  if (!Has(m.ground(), i)) throw std::out_of_range("element not in the ground set");
  const bool direct = w.mode == MatroidMode::kDirect;
  const ElementSet opt = SortGreedyBasis(w).basis;
  VcgBreakdown out;
  out.in_opt = Has(opt, i);
  if (!out.in_opt) {
    out.exchange = out.circuit = out.welfare_difference = kInfinite;
    return out;
  }
  const ElementSet bit = ElementSet{1} << i;

  // Exchange: best j outside OPT with OPT - i + j independent.
  std::optional<Money> ex;
  for (int j : Members(m.ground() & ~opt)) {
    if (!m.Independent((opt & ~bit) | (ElementSet{1} << j))) continue;
    if (!ex || Better(w.mode, w.weight[j], *ex)) ex = w.weight[j];
  }
  out.exchange = ex ? VcgPrice{false, *ex} : (direct ? VcgPrice{false, 0} : kInfinite);

  // Circuit: over circuits through i, the worst other element; best such.
  std::optional<Money> cir;
  for (ElementSet c : m.Circuits()) {
    if (!Has(c, i) || c == bit) continue;
    int worst = -1;
    for (int j : Members(c & ~bit)) {
      if (worst < 0 || Better(w.mode, w.weight[worst], w.weight[j])) worst = j;
    }
    if (!cir || Better(w.mode, w.weight[worst], *cir)) cir = w.weight[worst];
  }
  out.circuit = cir ? VcgPrice{false, *cir} : (direct ? VcgPrice{false, 0} : kInfinite);

  // Welfare difference: optimum without i, minus the others' share of OPT.
  WeightedMatroid without = WithMatroid(w, m.Delete(bit));
  BasisResult alt = SortGreedyBasis(without);
  Money others = WeightOf(w, opt) - w.weight[i];
  if (!direct && without.matroid.Rank() < m.Rank()) {
    out.welfare_difference = kInfinite;
  } else {
    // Direct: W(without i) - (W(OPT) - v_i). Procurement: the payment to i,
    // C(without i) - (C(OPT) - c_i). Same expression either way.
    out.welfare_difference = {false, alt.weight - others};
  }
  out.agree = out.exchange == out.circuit && out.circuit == out.welfare_difference;
  return out;
}

VcgPrice VcgPriceOf(const WeightedMatroid& w, int i) {
  VcgBreakdown b = VcgPriceBreakdown(w, i);
  if (!b.agree) {
    throw std::logic_error("VCG formulas disagree for " + w.matroid.name(i) + ": exchange " +
                           ToString(b.exchange) + ", circuit " + ToString(b.circuit) +
                           ", welfare difference " + ToString(b.welfare_difference));
  }
  return b.exchange;
}

std::string PolicyName(CocircuitPolicy p) {
  switch (p) {
    case CocircuitPolicy::kLexicographic:
      return "lexicographic";
    case CocircuitPolicy::kRandom:
      return "random";
    case CocircuitPolicy::kLongest:
      return "longest";
  }
  return "unknown";
}

CocircuitPolicy ParsePolicy(const std::string& s) {
  if (s == "lexicographic" || s == "lex") return CocircuitPolicy::kLexicographic;
  if (s == "random") return CocircuitPolicy::kRandom;
  if (s == "longest" || s == "adversarial-longest") return CocircuitPolicy::kLongest;
  throw std::invalid_argument("unknown co-circuit policy: " + s);
}

namespace {

ElementSet PickCocircuit(const Matroid& current, CocircuitPolicy policy, std::mt19937_64& rng) {
  std::vector<ElementSet> all = current.Cocircuits();
  if (all.empty()) throw std::logic_error("no co-circuit in a matroid of positive rank");
  switch (policy) {
    case CocircuitPolicy::kLexicographic:
      return all.front();
    case CocircuitPolicy::kRandom:
      return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
    case CocircuitPolicy::kLongest: {
      ElementSet best = all.front();
      for (ElementSet d : all) {
        if (std::popcount(d) > std::popcount(best)) best = d;
      }
      return best;
    }
  }
  return all.front();
}

}  // namespace

AuctionTrace RunSequentialBasisAuction(const WeightedMatroid& w, CocircuitPolicy policy,
                                       std::uint64_t seed) {
  ValidateWeighted(w);
  AuctionTrace trace;
  trace.ties = !w.DistinctWeights();
  trace.prices.assign(w.matroid.size(), Money(0));
  std::mt19937_64 rng(seed);
  Matroid current = w.matroid;
  while (current.Rank() > 0) {
    WeightedMatroid sub = WithMatroid(w, current);
    ElementSet d = PickCocircuit(current, policy, rng);
    ElementSet opt = SortGreedyBasis(sub).basis;
    AuctionStep step;
    step.cocircuit = d;
    for (int e : Members(d & opt)) {
      Money p = VcgPriceOf(sub, e).value;
      // Highest price wins in direct mode, lowest payment in procurement.
      if (step.winner < 0 || Better(w.mode, p, step.price)) {
        step.winner = e;
        step.price = p;
      }
    }
    if (step.winner < 0) throw std::logic_error("co-circuit misses the optimal basis");
    trace.basis |= ElementSet{1} << step.winner;
    trace.prices[step.winner] = step.price;
    trace.steps.push_back(step);
    current = current.Contract(ElementSet{1} << step.winner);
  }
  return trace;
}

ParticipationMatching ParticipationMatchingFor(const AuctionTrace& trace, ElementSet basis) {
  std::vector<int> elems = Members(basis);
  const int k = static_cast<int>(elems.size());
  const int t = static_cast<int>(trace.steps.size());
  if (k > 20) throw std::invalid_argument("Hall check is exhaustive; basis too large");
  std::vector<std::uint64_t> nbr(k, 0);
  for (int a = 0; a < k; ++a) {
    for (int s = 0; s < t; ++s) {
      if (Has(trace.steps[s].cocircuit, elems[a])) nbr[a] |= std::uint64_t{1} << s;
    }
  }
  ParticipationMatching out;
  for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << k); ++sub) {
    std::uint64_t n = 0;
    for (int a = 0; a < k; ++a) {
      if ((sub >> a) & 1U) n |= nbr[a];
    }
    if (std::popcount(n) < std::popcount(sub)) {
      ElementSet bad = 0;
      for (int a = 0; a < k; ++a) {
        if ((sub >> a) & 1U) bad |= ElementSet{1} << elems[a];
      }
      out.failure = HallFailure{bad};
      return out;
    }
  }
  // Kuhn's augmenting paths.
  std::vector<int> match_auction(t, -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int a, std::vector<bool>& seen) {
    for (int s = 0; s < t; ++s) {
      if (!((nbr[a] >> s) & 1U) || seen[s]) continue;
      seen[s] = true;
      if (match_auction[s] < 0 || augment(match_auction[s], seen)) {
        match_auction[s] = a;
        return true;
      }
    }
    return false;
  };
  for (int a = 0; a < k; ++a) {
    std::vector<bool> seen(t, false);
    if (!augment(a, seen)) throw std::logic_error("Hall holds but augmentation failed");
  }
  for (int a = 0; a < k; ++a) {
    for (int s = 0; s < t; ++s) {
      if (match_auction[s] == a) out.pairs.emplace_back(elems[a], s);
    }
  }
  out.ok = true;
  return out;
}

namespace {

constexpr int kUnsold = -2;

struct GameNode {
  ElementSet cocircuit = 0;
  int winner = -1;      // bidder, -1 when nobody is connected
  int element = -1;     // element taken this round
  Money price;
  std::vector<Money> continuation;  // utility from here to the end
};

class MatroidGame {
 public:
  MatroidGame(const Matroid& m, const std::vector<Valuation>& bidders, CocircuitPolicy policy,
              std::uint64_t seed, size_t max_states)
      : m_(m), bidders_(bidders), policy_(policy), seed_(seed), max_states_(max_states) {}

  // owners[e]: bidder holding e, -1 if free, kUnsold if contracted unsold.
  const GameNode* Node(const Owners& owners) {
    std::string key(owners.begin(), owners.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.get();
    ElementSet taken = 0;
    for (int e = 0; e < m_.size(); ++e) {
      if (owners[e] != -1) taken |= ElementSet{1} << e;
    }
    Matroid current = m_.Contract(taken);
    if (current.Rank() == 0) return nullptr;
    if (memo_.size() >= max_states_) throw std::length_error("state space exceeds max_states");
    const int n = static_cast<int>(bidders_.size());

    auto node = std::make_unique<GameNode>();
    std::mt19937_64 rng(seed_ ^ (std::hash<std::string>{}(key) * 0x9e3779b97f4a7c15ULL));
    node->cocircuit = PickCocircuit(current, policy_, rng);
    std::vector<int> members = Members(node->cocircuit);

    std::vector<int> part;
    for (int i = 0; i < n; ++i) {
      for (int e : members) {
        if (bidders_[i].SingleValue(e) > 0) {
          part.push_back(i);
          break;
        }
      }
    }
    if (part.empty()) {
      Owners next = owners;
      next[members.front()] = kUnsold;
      node->element = members.front();
      node->price = 0;
      node->continuation = Continuation(next);
      return Store(key, std::move(node));
    }

    // Each participant's element choice if it wins, and the continuation.
    const int k = static_cast<int>(part.size());
    std::vector<int> choice(k);
    std::vector<Money> gain(k);
    std::vector<std::vector<Money>> child(k);
    for (int a = 0; a < k; ++a) {
      const int i = part[a];
      const ItemSet held = BundleOf(owners, i);
      bool have = false;
      for (int e : members) {
        if (bidders_[i].SingleValue(e) <= 0) continue;
        Owners next = owners;
        next[e] = i;
        std::vector<Money> cont = Continuation(next);
        Money marginal = bidders_[i].Marginal(held, e);
        if (!have || marginal + cont[i] > gain[a] + child[a][i]) {
          have = true;
          choice[a] = e;
          gain[a] = marginal;
          child[a] = std::move(cont);
        }
      }
    }
    int wa = 0;
    Money price = 0;
    if (k >= 2) {
      ExternalityMatrix mat;
      mat.v.assign(k, std::vector<Money>(k));
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          mat.v[a][b] = child[b][part[a]] + (a == b ? gain[a] : Money(0));
        }
      }
      StageEquilibrium eq = CanonicalEquilibrium(mat, PriceFormat::kFirst);
      wa = eq.outcome.winner;
      price = eq.outcome.price;
    }
    node->winner = part[wa];
    node->element = choice[wa];
    node->price = price;
    node->continuation = child[wa];
    node->continuation[node->winner] += gain[wa] - price;
    return Store(key, std::move(node));
  }

  std::vector<Money> Continuation(const Owners& owners) {
    const GameNode* node = Node(owners);
    if (node == nullptr) return std::vector<Money>(bidders_.size(), Money(0));
    return node->continuation;
  }

 private:
  const GameNode* Store(const std::string& key, std::unique_ptr<GameNode> node) {
    auto [it, inserted] = memo_.emplace(key, std::move(node));
    return it->second.get();
  }

  const Matroid& m_;
  const std::vector<Valuation>& bidders_;
  CocircuitPolicy policy_;
  std::uint64_t seed_;
  size_t max_states_;
  std::map<std::string, std::unique_ptr<GameNode>> memo_;
};

}  // namespace

Money MatroidMatchingOptimum(const Matroid& m, const std::vector<Valuation>& bidders) {
  const int n = static_cast<int>(bidders.size());
  Money best = 0;
  std::function<void(int, ElementSet, Money)> rec = [&](int i, ElementSet used, Money value) {
    if (i == n) {
      if (value > best) best = value;
      return;
    }
    rec(i + 1, used, value);
    for (int e : Members(m.ground() & ~used)) {
      ElementSet next = used | (ElementSet{1} << e);
      Money v = bidders[i].SingleValue(e);
      if (v > 0 && m.Independent(next)) rec(i + 1, next, value + v);
    }
  };
  rec(0, 0, Money(0));
  return best;
}

MatroidGameResult MatroidUnitDemandAuction(const Matroid& m, const std::vector<Valuation>& bidders,
                                           CocircuitPolicy policy, std::uint64_t seed,
                                           size_t max_states) {
  if (bidders.empty()) throw std::invalid_argument("no bidders");
  for (const Valuation& v : bidders) {
    if (v.num_items() != m.size()) {
      throw std::invalid_argument("bidder valuations must cover the matroid elements");
    }
  }
  MatroidGame game(m, bidders, policy, seed, max_states);
  MatroidGameResult out;
  Owners owners(m.size(), -1);
  out.report.prices.assign(m.size(), Money(0));
  while (const GameNode* node = game.Node(owners)) {
    out.path.push_back({node->cocircuit, node->winner, node->price});
    owners[node->element] = node->winner < 0 ? kUnsold : node->winner;
    out.report.prices[node->element] = node->price;
  }
  for (int& o : owners) {
    if (o == kUnsold) o = -1;
  }
  out.report.allocation = owners;
  const int n = static_cast<int>(bidders.size());
  out.report.utilities.assign(n, Money(0));
  out.report.welfare = 0;
  for (int i = 0; i < n; ++i) {
    Money v = bidders[i].Value(BundleOf(owners, i));
    out.report.welfare += v;
    out.report.utilities[i] = v;
  }
  for (int e = 0; e < m.size(); ++e) {
    if (owners[e] >= 0) out.report.utilities[owners[e]] -= out.report.prices[e];
  }
  out.report.opt = MatroidMatchingOptimum(m, bidders);
  if (out.report.welfare > 0) out.report.poa = Money(*out.report.opt / out.report.welfare);
  return out;
}

WeightedMatroid RandomGraphicalMatroid(std::mt19937_64& rng, int vertices, int extra,
                                       MatroidMode mode) {
  if (vertices < 2) throw std::invalid_argument("random graph needs 2+ vertices");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < vertices; ++v) {
    edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  }
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  for (int k = 0; k < extra; ++k) {
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  // Procurement needs every element on a cycle.
  while (mode == MatroidMode::kProcurement) {
    Matroid g = Matroid::Graphical(vertices, edges);
    bool coloop = false;
    for (ElementSet d : g.Cocircuits()) coloop = coloop || std::popcount(d) == 1;
    if (!coloop) break;
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::vector<int> perm(edges.size());
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Money> weight;
  for (int p : perm) weight.emplace_back(p);
  return WeightedMatroid{Matroid::Graphical(vertices, std::move(edges)), std::move(weight), mode};
}

void BasisAuctionCheck::Add(const BasisAuctionCheck& o) {
  traces += o.traces;
  allocation_mismatches += o.allocation_mismatches;
  price_mismatches += o.price_mismatches;
  greedy_mismatches += o.greedy_mismatches;
  lemma_pairs += o.lemma_pairs;
  lemma_violations += o.lemma_violations;
  hall_checks += o.hall_checks;
  hall_failures += o.hall_failures;
}

BasisAuctionCheck CheckBasisAuction(const WeightedMatroid& w, std::uint64_t seed) {
  BasisAuctionCheck c;
  const BasisResult opt = BruteForceBasis(w);
  if (GreedyOptBasis(w).basis != opt.basis || SortGreedyBasis(w).basis != opt.basis) {
    ++c.greedy_mismatches;
  }
  const std::vector<ElementSet> bases = w.matroid.Bases();
  for (CocircuitPolicy policy :
       {CocircuitPolicy::kLexicographic, CocircuitPolicy::kRandom, CocircuitPolicy::kLongest}) {
    AuctionTrace t = RunSequentialBasisAuction(w, policy, seed);
    ++c.traces;
    if (t.basis != opt.basis) ++c.allocation_mismatches;
    for (int e : Members(t.basis)) {
      if (!(VcgPriceOf(w, e) == VcgPrice{false, t.prices[e]})) ++c.price_mismatches;
    }
    Matroid current = w.matroid;
    for (const AuctionStep& step : t.steps) {
      WeightedMatroid sub = WithMatroid(w, current);
      ElementSet o = SortGreedyBasis(sub).basis;
      for (int i : Members(o)) {
        VcgPrice before = VcgPriceOf(sub, i);
        for (int k : Members(step.cocircuit)) {
          if (k == i) continue;
          ++c.lemma_pairs;
          VcgPrice after = VcgPriceOf(WithMatroid(w, current.Contract(ElementSet{1} << k)), i);
          // Procurement mirrors the order: a seller's payment can only drop,
          // unless contracting k leaves i as a coloop (unbounded payment).
          bool ordered = w.mode == MatroidMode::kDirect
                             ? after.infinite || (!before.infinite && after.value >= before.value)
                             : after.infinite || (!before.infinite && after.value <= before.value);
          bool eq = !Has(o, k) || after == before;
          if (!ordered || !eq) ++c.lemma_violations;
        }
      }
      current = current.Contract(ElementSet{1} << step.winner);
    }
    for (ElementSet b : bases) {
      ++c.hall_checks;
      if (!ParticipationMatchingFor(t, b).ok) ++c.hall_failures;
    }
  }
  return c;
}

namespace {

// Runs body(k) for k in [0, count) on `jobs` threads.
void ParallelFor(int count, int jobs, const std::function<void(int)>& body) {
  std::atomic<int> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

MatroidSweepResult MatroidSweep(const MatroidSweepOptions& options) {
  std::vector<BasisAuctionCheck> checks(options.count);
  std::vector<int> edges(options.count, 0);
  ParallelFor(options.count, options.jobs, [&](int k) {
    std::mt19937_64 rng(options.seed + k);
    int v = std::uniform_int_distribution<int>(2, options.max_vertices)(rng);
    int extra = std::uniform_int_distribution<int>(0, options.max_extra_edges)(rng);
    WeightedMatroid w = RandomGraphicalMatroid(rng, v, extra, options.mode);
    edges[k] = w.matroid.size();
    checks[k] = CheckBasisAuction(w, options.seed + k);
  });
  MatroidSweepResult r;
  r.instances = options.count;
  for (int k = 0; k < options.count; ++k) {
    r.check.Add(checks[k]);
    r.max_edges = std::max(r.max_edges, edges[k]);
  }
  return r;
}

UnitDemandMatroidSweepResult UnitDemandMatroidSweep(int count, std::uint64_t seed, int jobs,
                                                    CocircuitPolicy policy) {
  std::vector<std::optional<Money>> ratio(count);
  ParallelFor(count, jobs, [&](int k) {
    std::mt19937_64 rng(seed + k);
    int v = std::uniform_int_distribution<int>(2, 4)(rng);
    int extra = std::uniform_int_distribution<int>(0, 5 - v)(rng);
    WeightedMatroid w = RandomGraphicalMatroid(rng, v, extra);
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::uniform_int_distribution<int> value(0, 6);
    std::vector<Valuation> bidders;
    for (int i = 0; i < n; ++i) {
      std::vector<Money> vals;
      for (int e = 0; e < w.matroid.size(); ++e) vals.emplace_back(value(rng));
      bidders.push_back(Valuation::UnitDemand(std::move(vals)));
    }
    GameReport r = MatroidUnitDemandAuction(w.matroid, bidders, policy, seed + k).report;
    if (r.welfare == 0 && *r.opt > 0) throw std::logic_error("zero welfare with positive optimum");
    ratio[k] = r.poa;
  });
  UnitDemandMatroidSweepResult out;
  out.instances = count;
  for (int k = 0; k < count; ++k) {
    if (ratio[k] && *ratio[k] > out.worst_ratio) {
      out.worst_ratio = *ratio[k];
      out.worst_index = k;
    }
  }
  return out;
}

}  // namespace seqauction
