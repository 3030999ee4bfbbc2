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

// Command-line entry point. Exit codes: 0 success, 1 usage or input error,
// 2 a check failed, 3 no pure equilibrium on the grid.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqauction/json_io.hpp"
#include "seqauction/matroid.hpp"
#include "seqauction/scenarios.hpp"
#include "seqauction/sequential_game.hpp"
#include "seqauction/stage_auction.hpp"

namespace sa = seqauction;
using sa::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitNoEquilibrium = 3;

struct Outcome {
  Json result = Json::object();
  Json config = Json::object();
  std::vector<std::pair<std::string, bool>> assertions;
  int exit_code = kExitOk;

  void Assert(const std::string& name, bool pass) {
    assertions.emplace_back(name, pass);
    if (!pass && exit_code == kExitOk) exit_code = kExitCheckFailed;
  }
};

struct Common {
  std::string report_path;
  bool timing = false;
};

std::string Joined(int argc, char** argv) {
  std::string s;
  for (int k = 1; k < argc; ++k) s += (k > 1 ? " " : "") + std::string(argv[k]);
  return s;
}

sa::Money MoneyArg(const std::string& text, const std::string& flag) {
  try {
    return sa::ParseMoney(text);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(flag, e.what());
  }
}

// --- stage -----------------------------------------------------------------

Outcome Tau(const std::string& path) {
  Outcome out;
  sa::ExternalityMatrix m = sa::MatrixFromJson(sa::ReadJsonFile(path));
  out.result = sa::TauReportToJson(sa::TauThresholds(m));
  return out;
}

Outcome SolveStage(const std::string& path, const std::string& format, const std::string& method,
                   const std::string& epsilon) {
  Outcome out;
  sa::ExternalityMatrix m = sa::MatrixFromJson(sa::ReadJsonFile(path));
  sa::PriceFormat f = sa::ParseFormat(format);
  out.config = {{"format", format}, {"method", method}};
  sa::StageEquilibrium eq;
  if (method == "canonical") {
    eq = sa::CanonicalEquilibrium(m, f);
  } else {
    out.config["epsilon"] = epsilon;
    sa::AscendingResult r = sa::AscendingEquilibrium(m, MoneyArg(epsilon, "--epsilon"), f);
    eq = r.equilibrium;
    Json trace = Json::array();
    for (const auto& s : r.trace) {
      trace.push_back(Json{{"winner", s.winner}, {"setter", s.setter}, {"price", sa::ToString(s.price)}});
    }
    out.result["trace"] = trace;
    out.result["toxic"] = r.toxic;
  }
  out.result["equilibrium"] = sa::StageEquilibriumToJson(eq);
  out.Assert("stage_nash", sa::VerifyStageNash(m, eq.bids, f));
  return out;
}

Outcome Enumerate(const std::string& path) {
  Outcome out;
  sa::ExternalityMatrix m = sa::MatrixFromJson(sa::ReadJsonFile(path));
  out.result["outcomes"] = sa::CompatibleOutcomesToJson(sa::EnumerateCompatibleOutcomes(m));
  return out;
}

// --- sequential --------------------------------------------------------------

Outcome SolveSeq(const std::string& path, const std::string& policy, size_t max_states) {
  Outcome out;
  sa::AuctionInstance inst = sa::InstanceFromJson(sa::ReadJsonFile(path));
  out.config = {{"policy", policy}, {"max_states", max_states}};
  if (policy == "canonical") {
    sa::SolveOptions opts;
    opts.max_states = max_states;
    sa::SpeSolution sol = sa::SolveSpe(inst, opts);
    out.result = sa::GameReportToJson(sa::Play(sol), inst.items);
    out.result["states"] = sol.size();
  } else {
    sa::OutcomeSetOptions opts;
    opts.max_states = max_states;
    sa::OutcomeSet set = sa::EnumerateSpeOutcomes(inst, opts);
    Json all = Json::array();
    std::optional<sa::Money> worst;
    for (const auto& r : set.outcomes) {
      all.push_back(sa::GameReportToJson(r, inst.items));
      if (r.poa && (!worst || *r.poa > *worst)) worst = *r.poa;
    }
    out.result["outcomes"] = all;
    out.result["worst_poa"] = worst ? Json(sa::ToString(*worst)) : Json(nullptr);
    out.result["truncated"] = set.truncated;
    out.result["states"] = set.states;
  }
  return out;
}

sa::VerifyOptions VerifyOpts(const std::string& grid, size_t max_nodes) {
  sa::VerifyOptions o;
  o.grid = MoneyArg(grid, "--grid");
  if (o.grid <= 0) throw CLI::ValidationError("--grid", "must be positive");
  o.max_nodes = max_nodes;
  return o;
}

Outcome Verify(const std::string& instance_path, const std::string& profile_path,
               const std::string& grid, size_t max_nodes) {
  Outcome out;
  sa::AuctionInstance inst = sa::InstanceFromJson(sa::ReadJsonFile(instance_path));
  sa::StrategyProfileOracle profile = sa::ProfileFromJson(sa::ReadJsonFile(profile_path), inst);
  out.config = {{"grid", grid}, {"max_nodes", max_nodes}};
  sa::SpeVerification v = sa::VerifySpe(inst, profile, VerifyOpts(grid, max_nodes));
  out.result["verification"] = sa::VerificationToJson(v, inst);
  out.result["play"] = sa::GameReportToJson(sa::PlayProfile(inst, profile), inst.items);
  out.Assert("spe", v.status == sa::VerifyStatus::kPass);
  return out;
}

// --- matroid -----------------------------------------------------------------

Outcome MatroidCommand(const std::string& action, const std::string& path,
                       const std::string& mode, const std::string& policy, std::uint64_t seed) {
  Outcome out;
  sa::MatroidInput in = sa::MatroidFromJson(sa::ReadJsonFile(path));
  sa::WeightedMatroid& w = in.weighted;
  if (!mode.empty()) w.mode = sa::ParseMode(mode);
  sa::ValidateWeighted(w);
  const sa::Matroid& m = w.matroid;
  out.config = {{"mode", sa::ModeName(w.mode)}, {"policy", policy}, {"seed", seed}};
  if (!w.DistinctWeights()) out.result["warning"] = "weights are not distinct; ties broken by index";
  if (action == "run") {
    sa::AuctionTrace t = sa::RunSequentialBasisAuction(w, sa::ParsePolicy(policy), seed);
    out.result["trace"] = sa::TraceToJson(w, t);
    sa::BasisResult opt = sa::BruteForceBasis(w);
    out.result["optimum"] = sa::ElementSetToJson(m, opt.basis);
    out.result["optimum_weight"] = sa::ToString(opt.weight);
    out.Assert("allocation_is_optimal", t.basis == opt.basis);
    bool prices = true;
    for (int e : sa::Members(t.basis)) {
      prices = prices && sa::VcgPriceOf(w, e) == sa::VcgPrice{false, t.prices[e]};
    }
    out.Assert("prices_are_vcg", prices);
  } else if (action == "vcg") {
    Json prices = Json::object();
    for (int e : sa::Members(m.ground())) {
      sa::VcgBreakdown b = sa::VcgPriceBreakdown(w, e);
      prices[m.name(e)] = Json{{"in_opt", b.in_opt},
                               {"exchange", sa::ToString(b.exchange)},
                               {"circuit", sa::ToString(b.circuit)},
                               {"welfare_difference", sa::ToString(b.welfare_difference)}};
      out.Assert("formulas_agree_" + m.name(e), b.agree);
    }
    out.result["vcg"] = prices;
  } else if (action == "greedy") {
    auto show = [&](const sa::BasisResult& r) {
      return Json{{"basis", sa::ElementSetToJson(m, r.basis)}, {"weight", sa::ToString(r.weight)}};
    };
    sa::BasisResult g = sa::GreedyOptBasis(w), s = sa::SortGreedyBasis(w), b = sa::BruteForceBasis(w);
    out.result["cocircuit_greedy"] = show(g);
    out.result["sort_greedy"] = show(s);
    out.result["brute_force"] = show(b);
    out.Assert("greedy_matches_brute_force", g.weight == b.weight && s.weight == b.weight);
  } else {  // unit-demand
    if (in.bidders.empty()) throw CLI::ValidationError("instance", "needs a \"bidders\" list");
    sa::MatroidGameResult r =
        sa::MatroidUnitDemandAuction(m, in.bidders, sa::ParsePolicy(policy), seed);
    out.result = sa::GameReportToJson(r.report, m.names());
    Json path_json = Json::array();
    for (const auto& s : r.path) {
      path_json.push_back(Json{{"cocircuit", sa::ElementSetToJson(m, s.cocircuit)},
                               {"winner", s.winner < 0 ? Json(nullptr) : Json(s.winner)},
                               {"price", sa::ToString(s.price)}});
    }
    out.result["path"] = path_json;
    out.Assert("ratio_at_most_2", !r.report.poa || *r.report.poa <= 2);
  }
  return out;
}

// --- scenarios ---------------------------------------------------------------

void WriteJson(const std::string& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

Json ScenarioSummary(const sa::Scenario& s) {
  Json params = Json::object();
  for (const auto& [k, v] : s.parameters) params[k] = v;
  return Json{{"name", s.name},
              {"parameters", params},
              {"players", s.instance.n()},
              {"items", s.instance.items},
              {"format", sa::FormatName(s.instance.format)},
              {"expected_welfare", sa::ToString(s.expected_welfare)},
              {"expected_opt", sa::ToString(s.expected_opt)},
              {"expected_poa", sa::ToString(s.expected_poa)},
              {"notes", s.notes}};
}

Outcome ScenarioCommand(const std::string& name, const std::map<std::string, std::string>& params,
                        bool check, const std::vector<std::string>& emit, const std::string& grid,
                        size_t max_nodes) {
  Outcome out;
  sa::Scenario s = sa::BuildScenario(name, params);
  out.result["scenario"] = ScenarioSummary(s);
  sa::VerifyOptions vopts = VerifyOpts(grid, max_nodes);
  out.config = {{"grid", grid}, {"max_nodes", max_nodes}};

  if (name == "multi_item_nonexistence") {
    sa::NonexistenceScenario ne = sa::MultiItemNonexistence(
        sa::ParseMoney(s.parameters.at("v")), sa::ParseMoney(s.parameters.at("delta")),
        sa::ParseMoney(s.parameters.at("eps")));
    if (!emit.empty()) {
      WriteJson(emit[0], sa::InstanceToJson(ne.scenario.instance));
      if (emit.size() > 1) {
        WriteJson(emit[1], Json{{"schema", sa::kProfileSchema},
                                {"default", "none"},
                                {"rules", Json::array()},
                                {"note", "no pure equilibrium is known for this instance"}});
      }
    }
    if (check) {
      out.config["stage_grid"] = sa::ToString(ne.grid);
      out.Assert("walrasian", sa::CheckWalrasian(ne.scenario.instance.players,
                                                 ne.walrasian_allocation, ne.walrasian_prices));
      sa::GridStageResult g = sa::GridStageEquilibrium(
          ne.scenario.instance, sa::Owners(ne.scenario.instance.m(), -1), ne.grid);
      out.result["grid_search"] = sa::GridResultToJson(g);
      out.Assert("cycle_reported", g.found || !g.cycle.empty());
      out.result["status"] = out.exit_code == kExitOk ? "PASS" : "FAIL";
      if (!g.found && out.exit_code == kExitOk) out.exit_code = kExitNoEquilibrium;
    }
    return out;
  }

  if (!emit.empty()) {
    WriteJson(emit[0], sa::InstanceToJson(s.instance));
    if (emit.size() > 1) {
      Json profile = s.profile ? sa::RecordProfile(s.instance, *s.profile, vopts)
                               : Json{{"schema", sa::kProfileSchema}, {"default", "canonical"}};
      WriteJson(emit[1], profile);
    }
  }
  if (check) {
    sa::ScenarioCheck c = sa::CheckScenario(s, true, vopts);
    out.result["report"] = sa::GameReportToJson(c.report, s.instance.items);
    out.result["poa"] = c.report.poa ? Json(sa::ToString(*c.report.poa)) : Json(nullptr);
    if (c.verification) out.result["verification"] = sa::VerificationToJson(*c.verification, s.instance);
    out.result["failures"] = c.failures;
    out.Assert("scenario", c.pass);
    out.result["status"] = c.pass ? "PASS" : "FAIL";
  }
  return out;
}

// --- sweeps ------------------------------------------------------------------

struct SweepArgs {
  std::string kind = "unit_demand";
  int count = 100;
  std::uint64_t seed = 1;
  int jobs = 0;
  int n = 4;
  int m = 4;
  std::string bound;
  std::string delta = "1/2";
  double enumerate_limit = 256;
  std::string policy = "lexicographic";
};

Outcome Sweep(const SweepArgs& a) {
  Outcome out;
  const int jobs = a.jobs > 0 ? a.jobs : sa::DefaultJobs();
  out.config = {{"kind", a.kind}, {"count", a.count}, {"seed", a.seed}};
  if (a.kind == "matroid") {
    sa::MatroidSweepOptions o;
    o.count = a.count;
    o.seed = a.seed;
    o.jobs = jobs;
    sa::MatroidSweepResult r = sa::MatroidSweep(o);
    const auto& c = r.check;
    out.result = {{"instances", r.instances},        {"max_edges", r.max_edges},
                  {"traces", c.traces},              {"lemma_pairs", c.lemma_pairs},
                  {"hall_checks", c.hall_checks},    {"allocation_mismatches", c.allocation_mismatches},
                  {"price_mismatches", c.price_mismatches},
                  {"greedy_mismatches", c.greedy_mismatches},
                  {"lemma_violations", c.lemma_violations},
                  {"hall_failures", c.hall_failures}};
    out.Assert("allocation_and_prices_match_vcg", c.allocation_mismatches == 0 && c.price_mismatches == 0);
    out.Assert("greedy_matches_brute_force", c.greedy_mismatches == 0);
    out.Assert("contraction_monotonicity", c.lemma_violations == 0);
    out.Assert("participation_matching", c.hall_failures == 0);
    return out;
  }
  if (a.kind == "matroid_unit_demand") {
    sa::UnitDemandMatroidSweepResult r =
        sa::UnitDemandMatroidSweep(a.count, a.seed, jobs, sa::ParsePolicy(a.policy));
    sa::Money bound = a.bound.empty() ? sa::Money(2) : MoneyArg(a.bound, "--bound");
    out.config["bound"] = sa::ToString(bound);
    out.result = {{"instances", r.instances},
                  {"worst_ratio", sa::ToString(r.worst_ratio)},
                  {"worst_index", r.worst_index}};
    out.Assert("ratio_within_bound", r.worst_ratio <= bound);
    return out;
  }

  sa::InstanceGenerator gen;
  sa::Money bound;
  const int max_n = a.n, max_m = a.m;
  if (max_n < 1 || max_m < 1) throw CLI::ValidationError("--n/--m", "must be positive");
  auto sizes = [max_n, max_m](std::mt19937_64& rng) {
    int n = std::uniform_int_distribution<int>(std::min(2, max_n), max_n)(rng);
    int m = std::uniform_int_distribution<int>(1, max_m)(rng);
    return std::pair{n, m};
  };
  if (a.kind == "unit_demand") {
    bound = 2;
    gen = [sizes](std::mt19937_64& rng) {
      auto [n, m] = sizes(rng);
      return sa::RandomUnitDemand(rng, n, m);
    };
  } else if (a.kind == "additive") {
    bound = 1;
    gen = [sizes](std::mt19937_64& rng) {
      auto [n, m] = sizes(rng);
      return sa::RandomAdditive(rng, n, m);
    };
  } else if (a.kind == "uniform_submodular") {
    sa::Money delta = MoneyArg(a.delta, "--delta");
    if (delta < 0 || delta >= 1) throw CLI::ValidationError("--delta", "must lie in [0, 1)");
    bound = sa::Money(2 / (1 - delta));
    out.config["delta"] = sa::ToString(delta);
    // More bidders than items, as the bound requires.
    gen = [max_n, delta](std::mt19937_64& rng) {
      int n = std::uniform_int_distribution<int>(2, std::max(2, max_n))(rng);
      int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
      return sa::RandomUniformSubmodular(rng, n, m, delta);
    };
  } else {
    throw CLI::ValidationError("--kind", "unknown sweep kind " + a.kind);
  }
  if (!a.bound.empty()) bound = MoneyArg(a.bound, "--bound");
  out.config["bound"] = sa::ToString(bound);
  sa::SweepOptions o;
  o.count = a.count;
  o.seed = a.seed;
  o.jobs = jobs;
  o.enumerate_all_limit = a.enumerate_limit;
  sa::SweepResult r = sa::PoaSweep(gen, o);
  out.result = sa::SweepResultToJson(r);
  out.Assert("ratio_within_bound", r.worst_ratio <= bound);
  return out;
}

int Emit(const Outcome& out, const std::string& command, const Common& common, double seconds) {
  Json report;
  report["schema"] = sa::kReportSchema;
  report["command"] = command;
  report["config"] = out.config;
  report["result"] = out.result;
  Json asserts = Json::array();
  for (const auto& [name, pass] : out.assertions) asserts.push_back(Json{{"name", name}, {"pass", pass}});
  report["assertions"] = asserts;
  report["exit_code"] = out.exit_code;
  if (common.timing) report["wall_clock_seconds"] = seconds;
  if (common.report_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    WriteJson(common.report_path, report);
    std::cout << (out.exit_code == kExitOk ? "ok" : "exit " + std::to_string(out.exit_code))
              << ": report written to " << common.report_path << "\n";
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of sequential item auctions and matroid co-circuit auctions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--report", common.report_path, "Write the JSON report here instead of stdout");
  app.add_flag("--timing", common.timing, "Include wall-clock time in the report");

  std::string path, path2, format = "first", method = "canonical", epsilon = "1/100";
  std::string policy = "canonical", grid = "1/1000000", mode, mpolicy = "lexicographic";
  size_t max_states = 500000, max_nodes = 200000;
  std::uint64_t seed = 1;

  auto* tau = app.add_subcommand("tau", "Bid thresholds of a stage matrix");
  tau->add_option("matrix", path, "Matrix JSON {\"v\": [[...]]}")->required();

  auto* stage = app.add_subcommand("solve-stage", "Equilibrium of one externality auction");
  stage->add_option("matrix", path)->required();
  stage->add_option("--format", format)->check(CLI::IsMember({"first", "second"}));
  stage->add_option("--method", method)->check(CLI::IsMember({"canonical", "ascending"}));
  stage->add_option("--epsilon", epsilon, "Ascending price step");

  auto* en = app.add_subcommand("enumerate", "Compatible winner/price outcomes of a stage matrix");
  en->add_option("matrix", path)->required();

  auto* seq = app.add_subcommand("solve-seq", "Backward-induction SPE of a sequential auction");
  seq->add_option("instance", path)->required();
  seq->add_option("--policy", policy)->check(CLI::IsMember({"canonical", "all"}));
  seq->add_option("--max-states", max_states);

  auto* ver = app.add_subcommand("verify", "Check a strategy profile for subgame perfection");
  ver->add_option("instance", path)->required();
  ver->add_option("profile", path2)->required();
  ver->add_option("--grid", grid, "Step for neighbouring deviation candidates");
  ver->add_option("--max-nodes", max_nodes);

  std::string action;
  auto* mat = app.add_subcommand("matroid", "Sequential co-circuit auctions");
  mat->add_option("action", action)
      ->required()
      ->check(CLI::IsMember({"run", "vcg", "greedy", "unit-demand"}));
  mat->add_option("instance", path)->required();
  mat->add_option("--mode", mode)->check(CLI::IsMember({"direct", "procurement"}));
  mat->add_option("--policy", mpolicy)
      ->check(CLI::IsMember({"lexicographic", "random", "longest"}));
  mat->add_option("--seed", seed);

  std::string scen_name;
  bool check = false;
  std::vector<std::string> emit;
  auto* sc = app.add_subcommand("scenario", "Build, check or export a named construction");
  sc->add_option("name", scen_name)->required()->check(CLI::IsMember(sa::ScenarioNames()));
  sc->add_flag("--check", check);
  sc->add_option("--emit", emit, "instance.json [profile.json]")->expected(1, 2);
  sc->add_option("--grid", grid);
  sc->add_option("--max-nodes", max_nodes);
  sc->allow_extras();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Random-instance property sweeps");
  sweep->add_option("--kind", sw.kind)
      ->check(CLI::IsMember(
          {"unit_demand", "additive", "uniform_submodular", "matroid", "matroid_unit_demand"}));
  sweep->add_option("--count", sw.count)->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sw.seed);
  sweep->add_option("--jobs", sw.jobs, "Worker threads (default: SEQAUCTION_JOBS or all cores)");
  sweep->add_option("--n", sw.n, "Maximum players");
  sweep->add_option("--m", sw.m, "Maximum items");
  sweep->add_option("--bound", sw.bound, "Override the asserted ratio bound");
  sweep->add_option("--delta", sw.delta, "Top-value spread for uniform_submodular");
  sweep->add_option("--enumerate-limit", sw.enumerate_limit,
                    "Use every compatible outcome when n^m is at most this");
  sweep->add_option("--policy", sw.policy)->check(CLI::IsMember({"lexicographic", "random", "longest"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (*tau) {
      out = Tau(path);
    } else if (*stage) {
      out = SolveStage(path, format, method, epsilon);
    } else if (*en) {
      out = Enumerate(path);
    } else if (*seq) {
      out = SolveSeq(path, policy, max_states);
    } else if (*ver) {
      out = Verify(path, path2, grid, max_nodes);
    } else if (*mat) {
      out = MatroidCommand(action, path, mode, mpolicy, seed);
    } else if (*sc) {
      std::map<std::string, std::string> params;
      std::vector<std::string> extra = sc->remaining();
      for (size_t k = 0; k < extra.size(); ++k) {
        std::string key = extra[k];
        if (key.rfind("--", 0) != 0 || k + 1 >= extra.size()) {
          throw CLI::ValidationError("scenario", "parameters are --name value pairs");
        }
        params[key.substr(2)] = extra[++k];
      }
      out = ScenarioCommand(scen_name, params, check, emit, grid, max_nodes);
    } else if (*sweep) {
      out = Sweep(sw);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sa::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: size limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    return Emit(out, Joined(argc, argv), common, seconds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
