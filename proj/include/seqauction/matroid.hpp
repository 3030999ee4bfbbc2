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

#ifndef SEQAUCTION_MATROID_HPP_
#define SEQAUCTION_MATROID_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "seqauction/money.hpp"
#include "seqauction/sequential_game.hpp"
#include "seqauction/valuations.hpp"

namespace seqauction {

// Subset of matroid elements as a bitmask (at most 32 elements; the
// exhaustive routines below need far fewer).
using ElementSet = std::uint32_t;

std::vector<int> Members(ElementSet s);
ElementSet SetOf(const std::vector<int>& elements);

enum class MatroidKind { kGraphical, kUniform, kExplicit };

class Matroid {
 public:
  // Edges of a multigraph on vertices 0..vertices-1; independent = acyclic.
  static Matroid Graphical(int vertices, std::vector<std::pair<int, int>> edges,
                           std::vector<std::string> names = {});
  // Every set of at most `rank` elements is independent.
  static Matroid Uniform(int size, int rank, std::vector<std::string> names = {});
  // Independent sets are the listed sets and their subsets.
  static Matroid Explicit(int size, std::vector<ElementSet> independent,
                          std::vector<std::string> names = {});

  MatroidKind kind() const { return base_->kind; }
  // Element indices always refer to the original ground set.
  int size() const { return static_cast<int>(base_->names.size()); }
  const std::string& name(int e) const { return base_->names[e]; }
  const std::vector<std::string>& names() const { return base_->names; }
  int Index(const std::string& name) const;  // -1 if unknown
  ElementSet ground() const { return ground_; }
  const std::vector<std::pair<int, int>>& edges() const { return base_->edges; }
  int vertices() const { return base_->vertices; }
  int uniform_rank() const { return base_->uniform_rank; }
  const std::vector<ElementSet>& listed_sets() const { return base_->listed; }

  bool Independent(ElementSet s) const;
  int Rank(ElementSet s) const;
  int Rank() const { return Rank(ground_); }

  // Matroid on ground - X where S is independent iff S + B_X is
  // independent, B_X a maximal independent subset of X.
  Matroid Contract(ElementSet x) const;
  // Matroid on ground - X with the same independent sets.
  Matroid Delete(ElementSet x) const;

  std::vector<ElementSet> Bases() const;
  std::vector<ElementSet> Circuits() const;
  // Minimal sets meeting every basis, in lexicographic order of their
  // sorted element lists.
  std::vector<ElementSet> Cocircuits() const;

  // Exhaustive check of the three axioms over subsets of the ground set.
  bool CheckAxioms() const;

 private:
  struct Base {
    MatroidKind kind;
    std::vector<std::string> names;
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    int uniform_rank = 0;
    std::vector<ElementSet> listed;
    bool IndependentRaw(ElementSet s) const;
  };
  Matroid(std::shared_ptr<const Base> base, ElementSet ground, ElementSet contracted)
      : base_(std::move(base)), ground_(ground), contracted_(contracted) {}

  std::shared_ptr<const Base> base_;
  ElementSet ground_;
  ElementSet contracted_;  // independent in the base matroid
};

bool LexLess(ElementSet a, ElementSet b);

// Co-circuit of M/X. Throws std::invalid_argument when X is dependent or
// already spans.
ElementSet FindCocircuit(const Matroid& m, ElementSet x);

enum class MatroidMode { kDirect, kProcurement };
std::string ModeName(MatroidMode mode);
MatroidMode ParseMode(const std::string& s);

struct WeightedMatroid {
  Matroid matroid;
  std::vector<Money> weight;  // per original element
  MatroidMode mode = MatroidMode::kDirect;

  bool DistinctWeights() const;
};

// Throws std::invalid_argument if weights do not cover the elements or, in
// procurement mode, some co-circuit has a single element.
void ValidateWeighted(const WeightedMatroid& w);

struct BasisResult {
  ElementSet basis = 0;
  Money weight;
};

// Max-weight (direct) or min-weight (procurement) basis by repeatedly
// taking the best element of the lexicographic co-circuit.
BasisResult GreedyOptBasis(const WeightedMatroid& w);
// Same optimum by scanning elements in weight order.
BasisResult SortGreedyBasis(const WeightedMatroid& w);
// Exhaustive over all bases; ties keep the lexicographically smallest.
BasisResult BruteForceBasis(const WeightedMatroid& w);

// VCG price; nullopt encodes the infinite price of an element outside the
// optimum (its actual charge is 0).
struct VcgPrice {
  bool infinite = false;
  Money value;

  bool operator==(const VcgPrice& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};
std::string ToString(const VcgPrice& p);

struct VcgBreakdown {
  VcgPrice exchange;
  VcgPrice circuit;
  VcgPrice welfare_difference;
  bool in_opt = false;
  bool agree = true;
};

// All three formulas for element i.
VcgBreakdown VcgPriceBreakdown(const WeightedMatroid& w, int i);
// Exchange formula; throws std::logic_error if the three disagree.
VcgPrice VcgPriceOf(const WeightedMatroid& w, int i);

enum class CocircuitPolicy { kLexicographic, kRandom, kLongest };
std::string PolicyName(CocircuitPolicy p);
CocircuitPolicy ParsePolicy(const std::string& s);

struct AuctionStep {
  ElementSet cocircuit = 0;
  int winner = -1;
  Money price;
};

struct AuctionTrace {
  std::vector<AuctionStep> steps;
  ElementSet basis = 0;
  std::vector<Money> prices;  // per original element; 0 for losers
  bool ties = false;          // weights were not distinct
};

// Equilibrium outcome of the sequential co-circuit auction: in each
// co-circuit the optimal element with the highest current VCG price (the
// lowest in procurement) wins at that price.
AuctionTrace RunSequentialBasisAuction(const WeightedMatroid& w, CocircuitPolicy policy,
                                       std::uint64_t seed = 0);

struct HallFailure {
  ElementSet violating = 0;  // basis elements with too few auctions
};
struct ParticipationMatching {
  bool ok = false;
  // match[k] is the auction index matched to the k-th basis element.
  std::vector<std::pair<int, int>> pairs;  // (element, auction)
  std::optional<HallFailure> failure;
};

// Perfect matching between basis elements and the auctions whose
// co-circuit contains them, with Hall's condition checked exhaustively.
ParticipationMatching ParticipationMatchingFor(const AuctionTrace& trace, ElementSet basis);

// Game where each round sells one co-circuit of the matroid contracted by
// the elements already taken; the winner picks an element of the
// co-circuit it values. Solved by backward induction with the canonical
// stage equilibrium. Report allocation is indexed by element.
struct MatroidGameResult {
  GameReport report;
  std::vector<AuctionStep> path;
};
MatroidGameResult MatroidUnitDemandAuction(const Matroid& m, const std::vector<Valuation>& bidders,
                                           CocircuitPolicy policy, std::uint64_t seed = 0,
                                           size_t max_states = 200000);

// Welfare optimum over assignments of bidders to distinct elements that
// form an independent set.
Money MatroidMatchingOptimum(const Matroid& m, const std::vector<Valuation>& bidders);

// Connected multigraph: a random spanning tree plus `extra` random edges,
// weights a random permutation of 1..|E|.
WeightedMatroid RandomGraphicalMatroid(std::mt19937_64& rng, int vertices, int extra,
                                       MatroidMode mode = MatroidMode::kDirect);

// Property checks for one weighted matroid, run under every co-circuit
// policy: the trace matches the brute-force optimum and VCG prices, VCG
// prices are monotone under contraction (order mirrored in procurement)
// for every optimal element and every other element of each auctioned
// co-circuit, and every basis has a participation matching.
struct BasisAuctionCheck {
  int traces = 0;
  int allocation_mismatches = 0;
  int price_mismatches = 0;
  int greedy_mismatches = 0;
  int lemma_pairs = 0;
  int lemma_violations = 0;
  int hall_checks = 0;
  int hall_failures = 0;

  bool ok() const {
    return allocation_mismatches == 0 && price_mismatches == 0 && greedy_mismatches == 0 &&
           lemma_violations == 0 && hall_failures == 0;
  }
  void Add(const BasisAuctionCheck& o);
};
BasisAuctionCheck CheckBasisAuction(const WeightedMatroid& w, std::uint64_t seed);

struct MatroidSweepOptions {
  int count = 200;
  std::uint64_t seed = 1;
  int jobs = 1;
  int max_vertices = 6;
  int max_extra_edges = 4;
  MatroidMode mode = MatroidMode::kDirect;
};
struct MatroidSweepResult {
  int instances = 0;
  int max_edges = 0;
  BasisAuctionCheck check;
};
// Instance k uses a generator seeded with seed + k.
MatroidSweepResult MatroidSweep(const MatroidSweepOptions& options);

// Random graphs with at most 4 edges and 1 to 4 unit-demand bidders with
// integer values in [0, 6]; reports the worst optimum/welfare ratio.
struct UnitDemandMatroidSweepResult {
  int instances = 0;
  Money worst_ratio = 1;
  int worst_index = -1;
};
UnitDemandMatroidSweepResult UnitDemandMatroidSweep(int count, std::uint64_t seed, int jobs,
                                                    CocircuitPolicy policy);

}  // namespace seqauction

#endif  // SEQAUCTION_MATROID_HPP_
