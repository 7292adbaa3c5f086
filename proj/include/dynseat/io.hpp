#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "dynseat/metrics.hpp"
#include "dynseat/montecarlo.hpp"
#include "dynseat/systems.hpp"

namespace dynseat {

/// Malformed input file. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Comma-separated election table: header `constituency,<party>...,entitled`,
/// one row per constituency, `#` starts a comment line.
ElectionInput parse_election_csv(std::string_view text);
std::string serialize_election_csv(const ElectionInput& input);
ElectionInput read_election_file(const std::string& path);

struct RulesDocument {
  ElectionRules rules;
  DynamicOptions dynamic;

  friend bool operator==(const RulesDocument&, const RulesDocument&) = default;
};

/// JSON rules. Every field is optional and defaults to the current Swedish rules.
RulesDocument parse_rules_json(std::string_view text);
std::string serialize_rules_json(const RulesDocument& doc);
RulesDocument read_rules_file(const std::string& path);

using Json = nlohmann::ordered_json;

Json outcome_to_json(const ElectionInput& input, const SeatOutcome& outcome);
Json report_to_json(const DisproportionalityReport& report);
Json batch_to_json(const BatchStats& stats, const PerturbationConfig& config);
Json whatif_to_json(const ElectionInput& input, const WhatIfResult& result);

/// Human renderings, built only from the JSON documents above.
std::string render_outcome(const Json& doc);
std::string render_report(const Json& doc);
std::string render_batch(const Json& doc);
std::string render_whatif(const Json& doc);

/// "bin,count" rows for the decade histogram.
std::string histogram_csv(const BatchStats& stats);

}  // namespace dynseat
