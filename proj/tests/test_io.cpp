#include <doctest.h>

#include "fixtures.hpp"

using namespace dynseat;

namespace {

int error_line(const std::string& text) {
  try {
    parse_election_csv(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

int error_column(const std::string& text) {
  try {
    parse_election_csv(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST_CASE("election files round-trip") {
  for (const char* name : {"sweden_2010", "example1", "example2", "halland_2006"}) {
    CAPTURE(name);
    const auto in = fixtures::election(name);
    const std::string text = serialize_election_csv(in);
    const auto again = parse_election_csv(text);
    CHECK(again == in);
    CHECK(serialize_election_csv(again) == text);
  }
}

TEST_CASE("2010 file contents") {
  const auto in = fixtures::election("sweden_2010");
  CHECK(in.n_constituencies() == 29);
  CHECK(in.parties == std::vector<std::string>{"M", "C", "FP", "KD", "S", "V", "MP", "SD"});
  Votes entitled = 0;
  for (Votes e : in.entitled) entitled += e;
  CHECK(entitled == 7123651);
  CHECK(in.constituencies[28] == "Norrbottens län");
}

TEST_CASE("quoted labels") {
  const std::string text =
      "constituency,\"A,1\",B,entitled\n"
      "\"North, upper\",10,20,40\n"
      "\"Say \"\"hi\"\"\",1,2,3\n";
  const auto in = parse_election_csv(text);
  CHECK(in.parties[0] == "A,1");
  CHECK(in.constituencies[0] == "North, upper");
  CHECK(in.constituencies[1] == "Say \"hi\"");
  CHECK(parse_election_csv(serialize_election_csv(in)) == in);
}

TEST_CASE("comments, blank lines and CRLF") {
  const auto in = parse_election_csv("# c\r\n\r\nconstituency,A,entitled\r\n# x\r\nN,5,9\r\n");
  CHECK(in.constituencies == std::vector<std::string>{"N"});
  CHECK(in.votes(0, 0) == 5);
}

TEST_CASE("election parse errors carry positions") {
  CHECK(error_line("") == 1);
  CHECK(error_line("# only a comment\n") == 1);
  CHECK(error_line("constituency,A,B\nN,1,2\n") == 1);
  CHECK(error_line("constituency,A,entitled\n") > 0);
  CHECK(error_line("constituency,A,entitled\nN,1\n") == 2);
  CHECK(error_line("constituency,A,entitled\nN,1,2,3\n") == 2);
  CHECK(error_column("constituency,A,entitled\nN,1,2,3\n") == 7);
  CHECK(error_line("constituency,A,B,entitled\nN,1,2,3\nM,4,x5,6\n") == 3);
  CHECK(error_column("constituency,A,B,entitled\nN,1,2,3\nM,4,x5,6\n") == 5);
  CHECK(error_line("constituency,A,entitled\nN,-1,3\n") == 2);
  CHECK(error_line("constituency,A,entitled\nN,1,0\n") == 2);
  CHECK(error_line("constituency,A,entitled\nN,1,3\nN,2,3\n") == 3);
  CHECK(error_line("constituency,A,A,entitled\nN,1,1,3\n") == 1);
  CHECK(error_line("constituency,A,entitled\nN,99999999999999999999,3\n") == 2);
  CHECK(error_line("constituency,A,entitled\n\"N,1,3\n") == 2);
}

TEST_CASE("rules files round-trip") {
  for (const char* name : {"swedish_current", "dynamic_pure", "dynamic_modified", "example1",
                           "example2", "halland_row"}) {
    CAPTURE(name);
    const auto doc = fixtures::rules(name);
    const std::string text = serialize_rules_json(doc);
    const auto again = parse_rules_json(text);
    CHECK(again == doc);
    CHECK(serialize_rules_json(again) == text);
  }
}

TEST_CASE("rules presets and overrides") {
  CHECK(fixtures::rules("swedish_current").rules == ElectionRules::swedish_current());
  CHECK(fixtures::rules("dynamic_pure").rules == ElectionRules::dynamic_pure());
  CHECK(fixtures::rules("dynamic_modified").rules.within_constituency_divisors ==
        DivisorSequence::modified());

  const auto doc = parse_rules_json(R"({
    "divisors": {"within_constituency": {"numerator": 6, "denominator": 5}, "list": "1.2"},
    "national_threshold": 0.05,
    "tie": {"mode": "seeded-lot", "seed": 12},
    "dynamic": {"min_permanent": 300, "constituency_floor": 2}
  })");
  CHECK(doc.rules.within_constituency_divisors.first() == Rational{6, 5});
  CHECK(doc.rules.list_divisors.first() == Rational{6, 5});
  CHECK(doc.rules.national_threshold == Rational{1, 20});
  CHECK(doc.rules.tie == TieRule::seeded_lot(12));
  CHECK(doc.dynamic.min_permanent == 300);
  CHECK(doc.dynamic.constituency_floor == 2);
  CHECK(parse_rules_json(serialize_rules_json(doc)) == doc);
}

TEST_CASE("rules parse errors") {
  CHECK_THROWS_AS(parse_rules_json("{"), ParseError);
  CHECK_THROWS_AS(parse_rules_json("[]"), ParseError);
  CHECK_THROWS_AS(parse_rules_json(R"({"house": 3})"), ParseError);
  CHECK_THROWS_AS(parse_rules_json(R"({"house_size": "many"})"), ParseError);
  CHECK_THROWS_AS(parse_rules_json(R"({"tie": {"mode": "coin"}})"), ParseError);
  CHECK_THROWS_AS(parse_rules_json(R"({"divisors": {"list": "steep"}})"), ParseError);
  CHECK_THROWS_AS(parse_rules_json(R"({"house_size": 10})"), RuleViolation);
  try {
    parse_rules_json("{\n  \"house_size\": 349,\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("outcome document holds every field") {
  const auto in = fixtures::election("sweden_2010");
  const auto out = allocate_current(in, ElectionRules::swedish_current());
  const Json doc = outcome_to_json(in, out);
  for (const char* key : {"system", "permanent", "adjustment", "national_targets", "targets",
                          "award_log", "but_parties", "constituency_permanent", "stop_index",
                          "adjustment_count", "needs_review", "party_totals"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["award_log"].size() == 349);
  CHECK(doc["but_parties"] == Json::array({"M", "S"}));
  CHECK(doc["permanent"][0][0] == 10);
  const std::string table = render_outcome(doc);
  CHECK(table.find("BUT parties: M S") != std::string::npos);
  CHECK(table.find("2+1") != std::string::npos);
}

TEST_CASE("metrics and what-if documents") {
  const auto in = fixtures::election("sweden_2010");
  const auto out = allocate_current(in, ElectionRules::swedish_current());
  const Json rep = report_to_json(report(in, out, Category::party));
  CHECK(rep["lh"] == "1.15");
  CHECK(render_report(rep).find("LH 1.15") != std::string::npos);

  const auto ex = fixtures::election("example2");
  const std::vector<VoteDelta> d{{0, 0, -1}, {0, 1, 1}};
  const Json w = whatif_to_json(ex, what_if(ex, fixtures::rules("example2").rules, System::dynamic, d));
  CHECK(w["changes"].size() == 4);
  CHECK(render_whatif(w).find("I / B: permanent 1 -> 0") != std::string::npos);
}

TEST_CASE("histogram rows") {
  BatchStats s;
  s.decade_histogram = {0, 2, 5};
  CHECK(histogram_csv(s) == "bin,count\n0-9,0\n10-19,2\n20-29,5\n");
}
