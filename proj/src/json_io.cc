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

#include "seqauction/json_io.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace seqauction {

namespace {

std::string Sub(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string Sub(const std::string& path, size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& Field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw JsonError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(Sub(path, key), "missing field");
  return *it;
}

const Json& Array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonError(path.empty() ? "/" : path, "expected an array");
  return j;
}

std::string String(const Json& j, const std::string& path) {
  if (!j.is_string()) throw JsonError(path.empty() ? "/" : path, "expected a string");
  return j.get<std::string>();
}

int Int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw JsonError(path.empty() ? "/" : path, "expected an integer");
  return j.get<int>();
}

std::vector<Money> MoneyList(const Json& j, const std::string& path) {
  std::vector<Money> out;
  for (size_t k = 0; k < Array(j, path).size(); ++k) out.push_back(MoneyFromJson(j[k], Sub(path, k)));
  return out;
}

Json MoneyListToJson(const std::vector<Money>& v) {
  Json a = Json::array();
  for (const Money& m : v) a.push_back(MoneyToJson(m));
  return a;
}

void CheckSchema(const Json& j, const char* schema) {
  if (j.is_object() && j.contains("schema") && j["schema"] != schema) {
    throw JsonError("/schema", "expected " + std::string(schema));
  }
}

int ItemIndex(const std::vector<std::string>& items, const std::string& name,
              const std::string& path) {
  for (size_t k = 0; k < items.size(); ++k) {
    if (items[k] == name) return static_cast<int>(k);
  }
  throw JsonError(path, "unknown item " + name);
}

std::vector<Money> ItemValues(const Json& j, const std::vector<std::string>& items,
                              const std::string& path) {
  if (j.is_object()) {
    std::vector<Money> out(items.size(), Money(0));
    for (auto it = j.begin(); it != j.end(); ++it) {
      out[ItemIndex(items, it.key(), Sub(path, it.key()))] =
          MoneyFromJson(it.value(), Sub(path, it.key()));
    }
    return out;
  }
  std::vector<Money> out = MoneyList(j, path);
  if (out.size() != items.size()) throw JsonError(path, "expected one value per item");
  return out;
}

std::string HistoryKey(const BidHistory& h) {
  std::string key;
  for (const StageOutcome& o : h) {
    for (const Bid& b : o.bids) key += ToString(b) + ",";
    key += ";";
  }
  return key;
}

Json HistoryToJson(const BidHistory& h) {
  Json a = Json::array();
  for (const StageOutcome& o : h) {
    Json r = Json::array();
    for (const Bid& b : o.bids) r.push_back(BidToJson(b));
    a.push_back(r);
  }
  return a;
}

}  // namespace

Json ParseJsonText(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line:column.
    size_t line = 1, col = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw JsonError(source + ":" + std::to_string(line) + ":" + std::to_string(col),
                    "malformed JSON");
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseJsonText(ss.str(), path);
}

Money MoneyFromJson(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Money(j.get<long>());
  if (j.is_string()) {
    try {
      return ParseMoney(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw JsonError(path.empty() ? "/" : path, e.what());
    }
  }
  throw JsonError(path.empty() ? "/" : path, "expected a rational string or an integer");
}

Json MoneyToJson(const Money& m) { return ToString(m); }

Bid BidFromJson(const Json& j, const std::string& path) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    bool plus = !s.empty() && s.back() == '+';
    if (plus) s.pop_back();
    return Bid{MoneyFromJson(Json(s), path), plus};
  }
  return Bid{MoneyFromJson(j, path), false};
}

Json BidToJson(const Bid& b) { return ToString(b); }

ExternalityMatrix MatrixFromJson(const Json& j) {
  ExternalityMatrix m;
  const Json& rows = Array(Field(j, "v", ""), "/v");
  for (size_t r = 0; r < rows.size(); ++r) m.v.push_back(MoneyList(rows[r], Sub("/v", r)));
  for (size_t r = 0; r < m.v.size(); ++r) {
    if (m.v[r].size() != m.v.size()) throw JsonError(Sub("/v", r), "matrix must be square");
  }
  if (m.n() < 2) throw JsonError("/v", "need at least 2 players");
  return m;
}

Json MatrixToJson(const ExternalityMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.v) rows.push_back(MoneyListToJson(row));
  return Json{{"v", rows}};
}

Valuation ValuationFromJson(const Json& j, const std::vector<std::string>& items,
                            const std::string& path) {
  const std::string kind = String(Field(j, "kind", path), Sub(path, "kind"));
  const int m = static_cast<int>(items.size());
  try {
    if (kind == "additive") {
      return Valuation::Additive(ItemValues(Field(j, "values", path), items, Sub(path, "values")));
    }
    if (kind == "unit_demand") {
      return Valuation::UnitDemand(
          ItemValues(Field(j, "values", path), items, Sub(path, "values")));
    }
    if (kind == "uniform_submodular") {
      return Valuation::UniformSubmodular(
          m, MoneyList(Field(j, "marginals", path), Sub(path, "marginals")));
    }
    if (kind == "table") {
      std::vector<std::pair<ItemSet, Money>> entries;
      const std::string ep = Sub(path, "entries");
      const Json& list = Array(Field(j, "entries", path), ep);
      for (size_t k = 0; k < list.size(); ++k) {
        const std::string p = Sub(ep, k);
        ItemSet s = 0;
        const Json& names = Array(Field(list[k], "items", p), Sub(p, "items"));
        for (size_t x = 0; x < names.size(); ++x) {
          const std::string q = Sub(Sub(p, "items"), x);
          s |= Singleton(ItemIndex(items, String(names[x], q), q));
        }
        entries.emplace_back(s, MoneyFromJson(Field(list[k], "value", p), Sub(p, "value")));
      }
      return Valuation::Table(m, std::move(entries));
    }
    if (kind == "coverage") {
      std::vector<Money> weights = MoneyList(Field(j, "weights", path), Sub(path, "weights"));
      const std::string cp = Sub(path, "covers");
      const Json& covers = Array(Field(j, "covers", path), cp);
      if (static_cast<int>(covers.size()) != m) throw JsonError(cp, "expected one list per item");
      std::vector<std::vector<int>> c;
      for (size_t x = 0; x < covers.size(); ++x) {
        std::vector<int> row;
        for (size_t e = 0; e < Array(covers[x], Sub(cp, x)).size(); ++e) {
          row.push_back(Int(covers[x][e], Sub(Sub(cp, x), e)));
        }
        c.push_back(std::move(row));
      }
      return Valuation::Coverage(std::move(weights), std::move(c));
    }
  } catch (const JsonError&) {
    throw;
  } catch (const std::exception& e) {
    throw JsonError(path.empty() ? "/" : path, e.what());
  }
  throw JsonError(Sub(path, "kind"), "unknown valuation kind " + kind);
}

Json ValuationToJson(const Valuation& v, const std::vector<std::string>& items) {
  Json j;
  j["kind"] = KindName(v.kind());
  switch (v.kind()) {
    case ValuationKind::kAdditive:
    case ValuationKind::kUnitDemand:
      j["values"] = MoneyListToJson(v.values());
      break;
    case ValuationKind::kUniformSubmodular:
      j["marginals"] = MoneyListToJson(v.values());
      break;
    case ValuationKind::kTable: {
      Json entries = Json::array();
      for (const auto& [s, value] : v.entries()) {
        Json names = Json::array();
        for (size_t x = 0; x < items.size(); ++x) {
          if (Contains(s, static_cast<int>(x))) names.push_back(items[x]);
        }
        entries.push_back(Json{{"items", names}, {"value", MoneyToJson(value)}});
      }
      j["entries"] = entries;
      break;
    }
    case ValuationKind::kCoverage:
      j["weights"] = MoneyListToJson(v.values());
      j["covers"] = v.covers();
      break;
  }
  return j;
}

AuctionInstance InstanceFromJson(const Json& j) {
  CheckSchema(j, kInstanceSchema);
  AuctionInstance inst;
  const Json* rounds = j.contains("rounds") ? &Array(j["rounds"], "/rounds") : nullptr;
  if (j.contains("items")) {
    const Json& items = Array(j["items"], "/items");
    for (size_t k = 0; k < items.size(); ++k) inst.items.push_back(String(items[k], Sub("/items", k)));
  } else if (rounds) {
    for (size_t r = 0; r < rounds->size(); ++r) {
      const Json& round = Array((*rounds)[r], Sub("/rounds", r));
      for (size_t x = 0; x < round.size(); ++x) {
        inst.items.push_back(String(round[x], Sub(Sub("/rounds", r), x)));
      }
    }
  } else {
    throw JsonError("/items", "need items or rounds");
  }
  if (inst.items.size() > 20) throw JsonError("/items", "at most 20 items supported");
  if (rounds) {
    for (size_t r = 0; r < rounds->size(); ++r) {
      std::vector<int> round;
      for (size_t x = 0; x < (*rounds)[r].size(); ++x) {
        const std::string p = Sub(Sub("/rounds", r), x);
        round.push_back(ItemIndex(inst.items, String((*rounds)[r][x], p), p));
      }
      inst.rounds.push_back(std::move(round));
    }
  } else {
    for (int x = 0; x < inst.m(); ++x) inst.rounds.push_back({x});
  }
  const Json& players = Array(Field(j, "players", ""), "/players");
  for (size_t i = 0; i < players.size(); ++i) {
    const std::string p = Sub("/players", i);
    inst.players.push_back(ValuationFromJson(players[i], inst.items, p));
    inst.player_names.push_back(players[i].contains("name") ? String(players[i]["name"], Sub(p, "name"))
                                                            : std::string());
  }
  bool named = false;
  for (const auto& s : inst.player_names) named = named || !s.empty();
  if (!named) inst.player_names.clear();
  if (j.contains("format")) {
    try {
      inst.format = ParseFormat(String(j["format"], "/format"));
    } catch (const std::invalid_argument& e) {
      throw JsonError("/format", e.what());
    }
  }
  try {
    ValidateInstance(inst);
  } catch (const std::exception& e) {
    throw JsonError("/", e.what());
  }
  return inst;
}

Json InstanceToJson(const AuctionInstance& inst) {
  Json j;
  j["schema"] = kInstanceSchema;
  j["format"] = FormatName(inst.format);
  j["items"] = inst.items;
  Json rounds = Json::array();
  for (const auto& round : inst.rounds) {
    Json r = Json::array();
    for (int x : round) r.push_back(inst.items[x]);
    rounds.push_back(r);
  }
  j["rounds"] = rounds;
  Json players = Json::array();
  for (int i = 0; i < inst.n(); ++i) {
    Json p;
    if (!inst.player_names.empty()) p["name"] = inst.player_names[i];
    Json v = ValuationToJson(inst.players[i], inst.items);
    for (auto it = v.begin(); it != v.end(); ++it) p[it.key()] = it.value();
    players.push_back(p);
  }
  j["players"] = players;
  return j;
}

namespace {

struct ProfileRule {
  std::vector<Bid> bids;
  std::vector<Money> breakpoints;
};

}  // namespace

StrategyProfileOracle ProfileFromJson(const Json& j, const AuctionInstance& instance) {
  CheckSchema(j, kProfileSchema);
  auto table = std::make_shared<std::map<std::string, ProfileRule>>();
  const int n = instance.n();
  if (j.contains("rules")) {
    const Json& rules = Array(j["rules"], "/rules");
    for (size_t k = 0; k < rules.size(); ++k) {
      const std::string p = Sub("/rules", k);
      BidHistory h;
      const Json& hist = Array(Field(rules[k], "history", p), Sub(p, "history"));
      for (size_t r = 0; r < hist.size(); ++r) {
        StageOutcome o;
        const std::string q = Sub(Sub(p, "history"), r);
        for (size_t i = 0; i < Array(hist[r], q).size(); ++i) o.bids.push_back(BidFromJson(hist[r][i], Sub(q, i)));
        if (static_cast<int>(o.bids.size()) != n) throw JsonError(q, "expected one bid per player");
        h.push_back(std::move(o));
      }
      ProfileRule rule;
      const Json& bids = Array(Field(rules[k], "bids", p), Sub(p, "bids"));
      for (size_t i = 0; i < bids.size(); ++i) rule.bids.push_back(BidFromJson(bids[i], Sub(Sub(p, "bids"), i)));
      if (static_cast<int>(rule.bids.size()) != n) throw JsonError(Sub(p, "bids"), "expected one bid per player");
      if (rules[k].contains("breakpoints")) {
        rule.breakpoints = MoneyList(rules[k]["breakpoints"], Sub(p, "breakpoints"));
      }
      table->emplace(HistoryKey(h), std::move(rule));
    }
  }
  const std::string fallback = j.contains("default") ? String(j["default"], "/default") : "none";
  std::shared_ptr<const SpeSolution> solution;
  if (fallback == "canonical") {
    solution = std::make_shared<SpeSolution>(SolveSpe(instance));
  } else if (fallback != "truthful" && fallback != "none") {
    throw JsonError("/default", "expected canonical, truthful or none");
  }
  std::optional<StrategyProfileOracle> canonical;
  if (solution) canonical = ProfileFromSolution(solution);

  StrategyProfileOracle out;
  auto inst = std::make_shared<const AuctionInstance>(instance);
  out.bids = [table, canonical, fallback, inst](const BidHistory& h) {
    if (auto it = table->find(HistoryKey(h)); it != table->end()) return it->second.bids;
    if (canonical) return canonical->bids(h);
    if (fallback == "truthful") {
      Owners owners = OwnersAfter(*inst, h);
      const int item = inst->rounds[h.size()][0];
      std::vector<Bid> bids;
      for (int i = 0; i < inst->n(); ++i) {
        bids.push_back(Bid{inst->players[i].Marginal(BundleOf(owners, i), item), false});
      }
      return bids;
    }
    throw std::out_of_range("profile undefined at history " + HistoryToJson(h).dump());
  };
  out.breakpoints = [table, canonical](const BidHistory& h) {
    if (auto it = table->find(HistoryKey(h)); it != table->end()) return it->second.breakpoints;
    if (canonical && canonical->breakpoints) return canonical->breakpoints(h);
    return std::vector<Money>{};
  };
  return out;
}

Json RecordProfile(const AuctionInstance& instance, const StrategyProfileOracle& profile,
                   const VerifyOptions& options) {
  auto seen = std::make_shared<std::map<std::string, std::pair<BidHistory, ProfileRule>>>();
  StrategyProfileOracle spy;
  spy.bids = [&profile, seen](const BidHistory& h) {
    std::vector<Bid> b = profile.bids(h);
    auto& entry = (*seen)[HistoryKey(h)];
    entry.first = h;
    entry.second.bids = b;
    if (profile.breakpoints) entry.second.breakpoints = profile.breakpoints(h);
    return b;
  };
  spy.breakpoints = [&profile](const BidHistory& h) {
    return profile.breakpoints ? profile.breakpoints(h) : std::vector<Money>{};
  };
  SpeVerification v = VerifySpe(instance, spy, options);
  if (v.status == VerifyStatus::kInconclusive) {
    throw std::length_error("profile too large to tabulate (" + v.note + ")");
  }
  Json rules = Json::array();
  for (const auto& [key, entry] : *seen) {
    Json r;
    r["history"] = HistoryToJson(entry.first);
    Json bids = Json::array();
    for (const Bid& b : entry.second.bids) bids.push_back(BidToJson(b));
    r["bids"] = bids;
    if (!entry.second.breakpoints.empty()) r["breakpoints"] = MoneyListToJson(entry.second.breakpoints);
    rules.push_back(r);
  }
  return Json{{"schema", kProfileSchema}, {"default", "none"}, {"rules", rules}};
}

MatroidInput MatroidFromJson(const Json& j) {
  CheckSchema(j, kMatroidSchema);
  const std::string kind = j.contains("kind") ? String(j["kind"], "/kind") : "graphical";
  std::vector<std::string> names;
  std::vector<Money> weights;
  std::optional<Matroid> m;
  if (kind == "graphical") {
    const int n = Int(Field(j, "vertices", ""), "/vertices");
    std::map<std::string, int> vertex;
    std::vector<std::pair<int, int>> edges;
    const Json& list = Array(Field(j, "edges", ""), "/edges");
    for (size_t k = 0; k < list.size(); ++k) {
      const std::string p = Sub("/edges", k);
      if (!list[k].is_array() || list[k].size() != 4) {
        throw JsonError(p, "expected [u, v, name, weight]");
      }
      int ends[2];
      for (int s = 0; s < 2; ++s) {
        std::string label = list[k][s].is_number_integer() ? std::to_string(list[k][s].get<int>())
                                                           : String(list[k][s], Sub(p, s));
        auto it = vertex.find(label);
        if (it == vertex.end()) {
          if (static_cast<int>(vertex.size()) >= n) throw JsonError(Sub(p, s), "more vertex labels than vertices");
          it = vertex.emplace(label, static_cast<int>(vertex.size())).first;
        }
        ends[s] = it->second;
      }
      edges.emplace_back(ends[0], ends[1]);
      names.push_back(String(list[k][2], Sub(p, 2)));
      weights.push_back(MoneyFromJson(list[k][3], Sub(p, 3)));
    }
    if (edges.size() > 24) throw JsonError("/edges", "at most 24 edges supported");
    m = Matroid::Graphical(n, std::move(edges), names);
  } else if (kind == "uniform" || kind == "explicit") {
    const Json& el = Array(Field(j, "elements", ""), "/elements");
    for (size_t k = 0; k < el.size(); ++k) {
      const std::string p = Sub("/elements", k);
      if (!el[k].is_array() || el[k].size() != 2) throw JsonError(p, "expected [name, weight]");
      names.push_back(String(el[k][0], Sub(p, 0)));
      weights.push_back(MoneyFromJson(el[k][1], Sub(p, 1)));
    }
    if (names.size() > 24) throw JsonError("/elements", "at most 24 elements supported");
    const int size = static_cast<int>(names.size());
    if (kind == "uniform") {
      int rank = Int(Field(j, "rank", ""), "/rank");
      if (rank < 0 || rank > size) throw JsonError("/rank", "rank out of range");
      m = Matroid::Uniform(size, rank, names);
    } else {
      std::vector<ElementSet> sets;
      const Json& ind = Array(Field(j, "independent", ""), "/independent");
      for (size_t k = 0; k < ind.size(); ++k) {
        ElementSet s = 0;
        for (size_t x = 0; x < Array(ind[k], Sub("/independent", k)).size(); ++x) {
          const std::string p = Sub(Sub("/independent", k), x);
          int e = -1;
          std::string nm = String(ind[k][x], p);
          for (int y = 0; y < size; ++y) {
            if (names[y] == nm) e = y;
          }
          if (e < 0) throw JsonError(p, "unknown element " + nm);
          s |= ElementSet{1} << e;
        }
        sets.push_back(s);
      }
      m = Matroid::Explicit(size, std::move(sets), names);
    }
  } else {
    throw JsonError("/kind", "expected graphical, uniform or explicit");
  }
  MatroidMode mode = MatroidMode::kDirect;
  if (j.contains("mode")) {
    try {
      mode = ParseMode(String(j["mode"], "/mode"));
    } catch (const std::invalid_argument& e) {
      throw JsonError("/mode", e.what());
    }
  }
  MatroidInput in{WeightedMatroid{*m, std::move(weights), mode}, {}};
  if (j.contains("bidders")) {
    const Json& b = Array(j["bidders"], "/bidders");
    for (size_t i = 0; i < b.size(); ++i) {
      in.bidders.push_back(Valuation::UnitDemand(ItemValues(b[i], names, Sub("/bidders", i))));
    }
  }
  return in;
}

Json MatroidToJson(const WeightedMatroid& w) {
  const Matroid& m = w.matroid;
  Json j;
  j["schema"] = kMatroidSchema;
  j["mode"] = ModeName(w.mode);
  switch (m.kind()) {
    case MatroidKind::kGraphical: {
      j["kind"] = "graphical";
      j["vertices"] = m.vertices();
      Json edges = Json::array();
      for (int e = 0; e < m.size(); ++e) {
        edges.push_back(Json::array({std::to_string(m.edges()[e].first),
                                     std::to_string(m.edges()[e].second), m.name(e),
                                     MoneyToJson(w.weight[e])}));
      }
      j["edges"] = edges;
      break;
    }
    case MatroidKind::kUniform:
    case MatroidKind::kExplicit: {
      j["kind"] = m.kind() == MatroidKind::kUniform ? "uniform" : "explicit";
      Json el = Json::array();
      for (int e = 0; e < m.size(); ++e) el.push_back(Json::array({m.name(e), MoneyToJson(w.weight[e])}));
      j["elements"] = el;
      if (m.kind() == MatroidKind::kUniform) {
        j["rank"] = m.uniform_rank();
      } else {
        Json sets = Json::array();
        for (ElementSet s : m.listed_sets()) sets.push_back(ElementSetToJson(m, s));
        j["independent"] = sets;
      }
      break;
    }
  }
  return j;
}

Json ElementSetToJson(const Matroid& m, ElementSet s) {
  Json a = Json::array();
  for (int e : Members(s)) a.push_back(m.name(e));
  return a;
}

Json GameReportToJson(const GameReport& r, const std::vector<std::string>& items) {
  Json alloc = Json::array();
  for (size_t x = 0; x < r.allocation.size(); ++x) {
    Json a;
    a["item"] = x < items.size() ? items[x] : std::to_string(x);
    a["winner"] = r.allocation[x] < 0 ? Json(nullptr) : Json(r.allocation[x]);
    a["price"] = MoneyToJson(r.prices[x]);
    alloc.push_back(a);
  }
  Json j;
  j["allocation"] = alloc;
  j["utilities"] = MoneyListToJson(r.utilities);
  j["welfare"] = MoneyToJson(r.welfare);
  j["opt"] = r.opt ? MoneyToJson(*r.opt) : Json(nullptr);
  j["poa"] = r.poa ? MoneyToJson(*r.poa) : Json(nullptr);
  return j;
}

Json StageEquilibriumToJson(const StageEquilibrium& eq) {
  Json bids = Json::array();
  for (const Bid& b : eq.bids) bids.push_back(BidToJson(b));
  Json j;
  j["winner"] = eq.outcome.winner;
  j["price"] = MoneyToJson(eq.outcome.price);
  j["supporter"] = eq.supporter < 0 ? Json(nullptr) : Json(eq.supporter);
  j["bids"] = bids;
  j["compatible"] = eq.compatible;
  return j;
}

Json TauReportToJson(const TauReport& t) {
  Json events = Json::array();
  for (const auto& e : t.events) {
    events.push_back(Json{{"player", e.player},
                          {"price", MoneyToJson(e.price)},
                          {"supporter", e.supporter < 0 ? Json(nullptr) : Json(e.supporter)}});
  }
  Json j;
  j["tau"] = MoneyListToJson(t.tau);
  j["gamma"] = MoneyListToJson(t.gamma);
  j["removal_order"] = t.removal_order;
  j["events"] = events;
  return j;
}

Json CompatibleOutcomesToJson(const std::vector<CompatibleOutcome>& outs) {
  Json a = Json::array();
  for (const auto& o : outs) {
    a.push_back(Json{{"winner", o.winner},
                     {"low", MoneyToJson(o.low)},
                     {"high", MoneyToJson(o.high)},
                     {"low_open", o.low_open},
                     {"high_open", o.high_open},
                     {"toxic", o.toxic}});
  }
  return a;
}

Json VerificationToJson(const SpeVerification& v, const AuctionInstance& instance) {
  Json j;
  j["status"] = StatusName(v.status);
  j["nodes_checked"] = v.nodes_checked;
  if (!v.note.empty()) j["note"] = v.note;
  if (v.violation) {
    j["violation"] = Json{{"history", HistoryToJson(v.violation->history)},
                          {"player", instance.PlayerName(v.violation->player)},
                          {"deviation", BidToJson(v.violation->deviation)},
                          {"gain", MoneyToJson(v.violation->gain)}};
  }
  return j;
}

Json TraceToJson(const WeightedMatroid& w, const AuctionTrace& t) {
  const Matroid& m = w.matroid;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back(Json{{"cocircuit", ElementSetToJson(m, s.cocircuit)},
                         {"winner", m.name(s.winner)},
                         {"price", MoneyToJson(s.price)}});
  }
  Json prices = Json::object();
  for (int e : Members(t.basis)) prices[m.name(e)] = MoneyToJson(t.prices[e]);
  Json j;
  j["steps"] = steps;
  j["basis"] = ElementSetToJson(m, t.basis);
  j["prices"] = prices;
  j["ties"] = t.ties;
  return j;
}

Json GridResultToJson(const GridStageResult& r) {
  auto bid_list = [](const std::vector<Bid>& bids) {
    Json a = Json::array();
    for (const Bid& b : bids) a.push_back(BidToJson(b));
    return a;
  };
  Json j;
  j["found"] = r.found;
  j["profiles_checked"] = r.profiles_checked;
  if (r.found) {
    Json bids = Json::array();
    for (const auto& row : r.bids) bids.push_back(bid_list(row));
    j["bids"] = bids;
    j["round_owners"] = r.round_owners;
    j["prices"] = MoneyListToJson(r.prices);
  }
  Json cycle = Json::array();
  for (const auto& step : r.cycle) cycle.push_back(Json{{"player", step.player}, {"bids", bid_list(step.bids)}});
  j["cycle"] = cycle;
  return j;
}

Json SweepResultToJson(const SweepResult& r) {
  Json j;
  j["instances"] = r.instances;
  j["worst_ratio"] = MoneyToJson(r.worst_ratio);
  j["worst_index"] = r.worst_index;
  j["enumerated"] = r.enumerated;
  j["truncated"] = r.truncated;
  j["histogram"] = r.histogram;
  return j;
}

}  // namespace seqauction
