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

#ifndef SEQAUCTION_JSON_IO_HPP_
#define SEQAUCTION_JSON_IO_HPP_

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "seqauction/matroid.hpp"
#include "seqauction/money.hpp"
#include "seqauction/scenarios.hpp"
#include "seqauction/sequential_game.hpp"
#include "seqauction/stage_auction.hpp"
#include "seqauction/valuations.hpp"

namespace seqauction {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceSchema = "seqauction.instance/1";
inline constexpr const char* kProfileSchema = "seqauction.profile/1";
inline constexpr const char* kMatroidSchema = "seqauction.matroid/1";
inline constexpr const char* kReportSchema = "seqauction.report/1";

// Schema violation; `path` is a JSON pointer to the offending value.
class JsonError : public std::runtime_error {
 public:
  JsonError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Parses text, turning syntax errors into JsonError with line and column.
Json ParseJsonText(const std::string& text, const std::string& source);
Json ReadJsonFile(const std::string& path);

Money MoneyFromJson(const Json& j, const std::string& path = "");
Json MoneyToJson(const Money& m);
// "x" or "x+".
Bid BidFromJson(const Json& j, const std::string& path = "");
Json BidToJson(const Bid& b);

ExternalityMatrix MatrixFromJson(const Json& j);
Json MatrixToJson(const ExternalityMatrix& m);

// Item-indexed fields are lists aligned with `items`; additive and unit
// demand values may also be objects keyed by item name.
Valuation ValuationFromJson(const Json& j, const std::vector<std::string>& items,
                            const std::string& path = "");
Json ValuationToJson(const Valuation& v, const std::vector<std::string>& items);

// "items" defaults to the concatenated rounds; "rounds" defaults to one
// round per item; "format" defaults to first.
AuctionInstance InstanceFromJson(const Json& j);
Json InstanceToJson(const AuctionInstance& instance);

// Profiles are tables of exact bid histories. Histories missing from the
// table fall back to "default": canonical (the canonical SPE), truthful
// (marginal value bids) or none (an error).
StrategyProfileOracle ProfileFromJson(const Json& j, const AuctionInstance& instance);
// Tabulates every history the verifier queries with folding disabled.
// Throws std::length_error if that exceeds options.max_nodes.
Json RecordProfile(const AuctionInstance& instance, const StrategyProfileOracle& profile,
                   const VerifyOptions& options);

// Graph edge list {"vertices": n, "edges": [[u, v, name, weight], ...]}
// with vertex labels as strings; also {"kind": "uniform"|"explicit", ...}.
// Optional "bidders": unit-demand value lists over the elements.
struct MatroidInput {
  WeightedMatroid weighted;
  std::vector<Valuation> bidders;
};
MatroidInput MatroidFromJson(const Json& j);
Json MatroidToJson(const WeightedMatroid& w);

Json ElementSetToJson(const Matroid& m, ElementSet s);
Json GameReportToJson(const GameReport& r, const std::vector<std::string>& items);
Json StageEquilibriumToJson(const StageEquilibrium& eq);
Json TauReportToJson(const TauReport& t);
Json CompatibleOutcomesToJson(const std::vector<CompatibleOutcome>& outs);
Json VerificationToJson(const SpeVerification& v, const AuctionInstance& instance);
Json TraceToJson(const WeightedMatroid& w, const AuctionTrace& t);
Json GridResultToJson(const GridStageResult& r);
Json SweepResultToJson(const SweepResult& r);

}  // namespace seqauction

#endif  // SEQAUCTION_JSON_IO_HPP_
