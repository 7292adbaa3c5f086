#include "dynseat/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace dynseat {

namespace {

struct Field {
  std::string text;
  int column = 1;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one line on commas; double quotes protect commas and "" escapes a quote.
std::vector<Field> split_fields(std::string_view line, int line_no) {
  std::vector<Field> out;
  std::size_t pos = 0;
  while (true) {
    Field f;
    f.column = static_cast<int>(pos) + 1;
    std::size_t start = pos;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
    if (start < line.size() && line[start] == '"') {
      std::string text;
      std::size_t i = start + 1;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            text += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        text += line[i++];
      }
      if (!closed) throw ParseError("unterminated quoted field", line_no, f.column);
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        throw ParseError("text after closing quote", line_no, static_cast<int>(i) + 1);
      }
      f.text = text;
      out.push_back(f);
      if (i >= line.size()) break;
      pos = i + 1;
    } else {
      const std::size_t comma = line.find(',', pos);
      f.text = trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
      out.push_back(f);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

Votes parse_count(const Field& f, int line_no) {
  const std::string& s = f.text;
  if (s.empty()) throw ParseError("empty count", line_no, f.column);
  if (s[0] == '-') throw ParseError("negative count '" + s + "'", line_no, f.column);
  Votes value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("count '" + s + "' out of range", line_no, f.column);
  }
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError("not an integer: '" + s + "'", line_no, f.column);
  }
  return value;
}

std::string quote_if_needed(const std::string& s) {
  const bool needs = s.find_first_of(",\"\n") != std::string::npos || s.empty() ||
                     s.front() == '#' || s.front() == ' ' || s.back() == ' ';
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Line and column of a byte offset, both 1-based.
std::pair<int, int> locate(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ParseError("unknown key '" + key + "' in " + where);
    }
  }
}

Rational rational_field(const Json& v, const std::string& name) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational{v.get<std::int64_t>(), 1};
    if (v.is_number()) return Rational::parse(v.dump());
    if (v.is_object()) {
      reject_unknown(v, {"numerator", "denominator"}, name);
      const std::int64_t num = v.at("numerator").get<std::int64_t>();
      const std::int64_t den = v.at("denominator").get<std::int64_t>();
      if (den <= 0) throw ParseError(name + ": denominator must be positive");
      return Rational{num, den};
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(name + ": " + e.what());
  }
  throw ParseError(name + ": expected a fraction");
}

DivisorSequence divisor_field(const Json& v, const std::string& name) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "pure") return DivisorSequence::pure();
    if (s == "modified" || s == "modified-1.4") return DivisorSequence::modified();
  }
  const Rational first = rational_field(v, name);
  if (first.num <= 0) throw RuleViolation(name + ": first divisor must be positive");
  return DivisorSequence(first);
}

Json divisor_json(const DivisorSequence& d) {
  if (d == DivisorSequence::pure()) return "pure";
  if (d == DivisorSequence::modified()) return "modified-1.4";
  return Json{{"numerator", d.first().num}, {"denominator", d.first().den}};
}

std::string exact_string(const Exact& x) {
  std::ostringstream ss;
  ss << boost::multiprecision::numerator(x);
  if (boost::multiprecision::denominator(x) != 1) ss << "/" << boost::multiprecision::denominator(x);
  return ss.str();
}

std::string pad_left(const std::string& s, std::size_t width) {
  // Labels may be UTF-8, so count code points rather than bytes.
  std::size_t shown = 0;
  for (unsigned char c : s) shown += (c & 0xC0) != 0x80;
  return shown >= width ? s : std::string(width - shown, ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  std::size_t shown = 0;
  for (unsigned char c : s) shown += (c & 0xC0) != 0x80;
  return shown >= width ? s : s + std::string(width - shown, ' ');
}

std::string format_fixed(double x, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << x;
  return ss.str();
}

}  // namespace

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what
                     : what),
      line_(line),
      column_(column) {}

ElectionInput parse_election_csv(std::string_view text) {
  ElectionInput in;
  std::vector<std::vector<Votes>> rows;
  bool have_header = false;
  std::size_t n_fields = 0;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  // Skip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == text.npos ? text.npos : nl - pos);
    pos = nl == text.npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    const std::vector<Field> fields = split_fields(line, line_no);
    if (!have_header) {
      if (fields.size() < 3) {
        throw ParseError("header needs a label column, at least one party and 'entitled'",
                         line_no, 1);
      }
      if (fields.back().text != "entitled") {
        throw ParseError("last header column must be 'entitled'", line_no, fields.back().column);
      }
      std::set<std::string> parties;
      for (std::size_t j = 1; j + 1 < fields.size(); ++j) {
        if (fields[j].text.empty()) throw ParseError("empty party label", line_no, fields[j].column);
        if (!parties.insert(fields[j].text).second) {
          throw ParseError("duplicate party '" + fields[j].text + "'", line_no, fields[j].column);
        }
        in.parties.push_back(fields[j].text);
      }
      n_fields = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != n_fields) {
      const int col = fields.size() > n_fields ? fields[n_fields].column
                                               : static_cast<int>(line.size()) + 1;
      throw ParseError("expected " + std::to_string(n_fields) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no, col);
    }
    if (fields[0].text.empty()) throw ParseError("empty constituency label", line_no, 1);
    if (!seen.insert(fields[0].text).second) {
      throw ParseError("duplicate constituency '" + fields[0].text + "'", line_no, 1);
    }
    in.constituencies.push_back(fields[0].text);
    std::vector<Votes> row;
    for (std::size_t j = 1; j + 1 < fields.size(); ++j) row.push_back(parse_count(fields[j], line_no));
    rows.push_back(std::move(row));
    const Votes entitled = parse_count(fields.back(), line_no);
    if (entitled <= 0) {
      throw ParseError("entitled voters must be positive", line_no, fields.back().column);
    }
    in.entitled.push_back(entitled);
  }
  if (!have_header) throw ParseError("empty election file", 1, 1);
  if (rows.empty()) throw ParseError("election file has no constituencies", line_no, 1);

  in.votes = Grid<Votes>(rows.size(), in.parties.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < in.parties.size(); ++j) in.votes(i, j) = rows[i][j];
  }
  return in;
}

std::string serialize_election_csv(const ElectionInput& input) {
  std::ostringstream out;
  out << "constituency";
  for (const std::string& p : input.parties) out << ',' << quote_if_needed(p);
  out << ",entitled\n";
  for (std::size_t i = 0; i < input.n_constituencies(); ++i) {
    out << quote_if_needed(input.constituencies[i]);
    for (std::size_t j = 0; j < input.n_parties(); ++j) out << ',' << input.votes(i, j);
    out << ',' << input.entitled[i] << '\n';
  }
  return out.str();
}

ElectionInput read_election_file(const std::string& path) {
  return parse_election_csv(slurp(path));
}

RulesDocument parse_rules_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON", line, column);
  }
  if (!doc.is_object()) throw ParseError("rules file must hold a JSON object", 1, 1);

  RulesDocument out;
  out.rules = ElectionRules::swedish_current();
  ElectionRules& r = out.rules;
  reject_unknown(doc,
                 {"house_size", "permanent_seats", "national_threshold", "constituency_threshold",
                  "divisors", "tie", "dynamic"},
                 "rules");
  try {
    if (doc.contains("house_size")) r.house_size = doc["house_size"].get<int>();
    if (doc.contains("permanent_seats")) r.permanent_seats = doc["permanent_seats"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("seat counts: ") + e.what());
  }
  if (doc.contains("national_threshold")) {
    r.national_threshold = rational_field(doc["national_threshold"], "national_threshold");
  }
  if (doc.contains("constituency_threshold")) {
    r.constituency_threshold =
        rational_field(doc["constituency_threshold"], "constituency_threshold");
  }
  if (doc.contains("divisors")) {
    const Json& d = doc["divisors"];
    if (!d.is_object()) throw ParseError("divisors must be an object");
    reject_unknown(d, {"within_constituency", "adjustment", "national", "list"}, "divisors");
    if (d.contains("within_constituency")) {
      r.within_constituency_divisors = divisor_field(d["within_constituency"], "within_constituency");
    }
    if (d.contains("adjustment")) r.adjustment_divisors = divisor_field(d["adjustment"], "adjustment");
    if (d.contains("national")) r.national_divisors = divisor_field(d["national"], "national");
    if (d.contains("list")) r.list_divisors = divisor_field(d["list"], "list");
  }
  if (doc.contains("tie")) {
    const Json& t = doc["tie"];
    if (!t.is_object()) throw ParseError("tie must be an object");
    reject_unknown(t, {"mode", "seed"}, "tie");
    const std::string mode = t.value("mode", std::string("lowest-index"));
    if (mode == "lowest-index") {
      r.tie = TieRule::lowest_index();
    } else if (mode == "seeded-lot") {
      if (!t.contains("seed") || !t["seed"].is_number_unsigned()) {
        throw ParseError("seeded-lot tie rule needs a non-negative integer seed");
      }
      r.tie = TieRule::seeded_lot(t["seed"].get<std::uint64_t>());
    } else {
      throw ParseError("unknown tie mode '" + mode + "'");
    }
  }
  if (doc.contains("dynamic")) {
    const Json& d = doc["dynamic"];
    if (!d.is_object()) throw ParseError("dynamic must be an object");
    reject_unknown(d, {"min_permanent", "constituency_floor"}, "dynamic");
    try {
      if (d.contains("min_permanent") && !d["min_permanent"].is_null()) {
        out.dynamic.min_permanent = d["min_permanent"].get<int>();
      }
      if (d.contains("constituency_floor") && !d["constituency_floor"].is_null()) {
        out.dynamic.constituency_floor = d["constituency_floor"].get<int>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("dynamic: ") + e.what());
    }
  }
  r.validate();
  return out;
}

std::string serialize_rules_json(const RulesDocument& doc) {
  const ElectionRules& r = doc.rules;
  Json j;
  j["house_size"] = r.house_size;
  j["permanent_seats"] = r.permanent_seats;
  j["national_threshold"] = r.national_threshold.to_string();
  j["constituency_threshold"] = r.constituency_threshold.to_string();
  j["divisors"] = {{"within_constituency", divisor_json(r.within_constituency_divisors)},
                   {"adjustment", divisor_json(r.adjustment_divisors)},
                   {"national", divisor_json(r.national_divisors)},
                   {"list", divisor_json(r.list_divisors)}};
  if (r.tie.mode() == TieRule::Mode::lowest_index) {
    j["tie"] = {{"mode", "lowest-index"}};
  } else {
    j["tie"] = {{"mode", "seeded-lot"}, {"seed", r.tie.seed()}};
  }
  Json dyn = Json::object();
  dyn["min_permanent"] = doc.dynamic.min_permanent ? Json(*doc.dynamic.min_permanent) : Json();
  dyn["constituency_floor"] =
      doc.dynamic.constituency_floor ? Json(*doc.dynamic.constituency_floor) : Json();
  j["dynamic"] = dyn;
  return j.dump(2) + "\n";
}

RulesDocument read_rules_file(const std::string& path) { return parse_rules_json(slurp(path)); }

Json outcome_to_json(const ElectionInput& input, const SeatOutcome& o) {
  auto grid = [](const Grid<int>& g) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      rows.push_back(std::vector<int>(g.row(i).begin(), g.row(i).end()));
    }
    return rows;
  };
  Json j;
  j["system"] = to_string(o.system);
  j["parties"] = input.parties;
  j["constituencies"] = input.constituencies;
  j["permanent"] = grid(o.permanent);
  j["adjustment"] = grid(o.adjustment);
  j["party_totals"] = o.party_totals();
  j["constituency_totals"] = o.constituency_totals();
  j["national_targets"] = o.national_targets;
  j["targets"] = o.targets;
  Json but = Json::array();
  for (std::size_t p : o.but_parties) but.push_back(input.parties[p]);
  j["but_parties"] = but;
  j["constituency_permanent"] = o.constituency_permanent;
  j["stop_index"] = o.stop_index;
  j["adjustment_count"] = o.adjustment_count;
  j["needs_review"] = o.needs_review;
  j["any_tie"] = o.any_tie();
  Json log = Json::array();
  for (const SeatAward& a : o.award_log) {
    log.push_back({{"seat", a.seat},
                   {"constituency", input.constituencies[a.constituency]},
                   {"party", input.parties[a.party]},
                   {"phase", to_string(a.phase)},
                   {"tie", a.tie},
                   {"forced", a.forced},
                   {"local_only", a.local_only}});
  }
  j["award_log"] = log;
  return j;
}

Json report_to_json(const DisproportionalityReport& rep) {
  Json j;
  j["category"] = to_string(rep.category);
  if (rep.category == Category::constituency) j["basis"] = to_string(rep.basis);
  j["lh"] = render_decimal(rep.lh, 2);
  j["sl"] = render_decimal(rep.sl, 2);
  j["lh_full"] = render_decimal(rep.lh, 12);
  j["sl_full"] = render_decimal(rep.sl, 12);
  j["lh_exact"] = exact_string(rep.lh);
  j["sl_exact"] = exact_string(rep.sl);
  Json terms = Json::array();
  for (std::size_t i = 0; i < rep.labels.size(); ++i) {
    terms.push_back({{"label", rep.labels[i]},
                     {"lh", render_decimal(rep.lh_contributions[i], 6)},
                     {"sl", render_decimal(rep.sl_contributions[i], 6)}});
  }
  j["contributions"] = terms;
  return j;
}

Json batch_to_json(const BatchStats& s, const PerturbationConfig& c) {
  Json j;
  j["config"] = {{"n", c.n_replications},
                 {"low", c.factor_low},
                 {"high", c.factor_high},
                 {"seed", c.seed},
                 {"basis", to_string(c.basis)},
                 {"scan_nonmono", c.scan_nonmono}};
  j["adjustment_seats"] = {{"mean", s.mean_adjustment},
                           {"sd", s.sd_adjustment},
                           {"min", s.min_adjustment},
                           {"max", s.max_adjustment}};
  Json hist = Json::array();
  for (std::size_t b = 0; b < s.decade_histogram.size(); ++b) {
    if (s.decade_histogram[b] == 0) continue;
    hist.push_back({{"bin", std::to_string(10 * b) + "-" + std::to_string(10 * b + 9)},
                    {"count", s.decade_histogram[b]}});
  }
  j["histogram"] = hist;
  Json raw = Json::array();
  for (std::size_t c2 = 0; c2 < s.raw_histogram.size(); ++c2) {
    if (s.raw_histogram[c2] != 0) raw.push_back({c2, s.raw_histogram[c2]});
  }
  j["raw_histogram"] = raw;
  j["but_count"] = s.but_count;
  j["but_rate"] = double(s.but_count) / s.n_replications;
  j["exactness_failures"] = s.exactness_failures;
  j["constituency_measures"] = {{"dynamic", {{"lh", s.mean_lh_dynamic}, {"sl", s.mean_sl_dynamic}}},
                                {"current", {{"lh", s.mean_lh_current}, {"sl", s.mean_sl_current}}}};
  auto counts = [](const NonMonoCounts& n) {
    return Json{{"lost_permanent", n.lost_permanent},
                {"regained_adjustment", n.regained_adjustment},
                {"candidate_lost", n.candidate_lost}};
  };
  j["nonmono"] = {{"triples", s.triples},
                  {"concentrated", counts(s.concentrated)},
                  {"proportional", counts(s.proportional)}};
  return j;
}

Json whatif_to_json(const ElectionInput& input, const WhatIfResult& r) {
  Json j;
  j["system"] = to_string(r.before.system);
  Json changes = Json::array();
  for (const CellChange& c : r.diff) {
    changes.push_back({{"constituency", input.constituencies[c.constituency]},
                       {"party", input.parties[c.party]},
                       {"permanent_before", r.before.permanent(c.constituency, c.party)},
                       {"adjustment_before", r.before.adjustment(c.constituency, c.party)},
                       {"permanent_after", r.after.permanent(c.constituency, c.party)},
                       {"adjustment_after", r.after.adjustment(c.constituency, c.party)},
                       {"permanent_change", c.permanent_change},
                       {"adjustment_change", c.adjustment_change},
                       {"total_change", c.total_change()}});
  }
  j["changes"] = changes;
  j["party_totals_before"] = r.before.party_totals();
  j["party_totals_after"] = r.after.party_totals();
  j["before"] = outcome_to_json(input, r.before);
  j["after"] = outcome_to_json(r.modified, r.after);
  return j;
}

std::string render_outcome(const Json& doc) {
  const auto parties = doc["parties"].get<std::vector<std::string>>();
  const auto labels = doc["constituencies"].get<std::vector<std::string>>();
  std::size_t label_width = 12;
  for (const std::string& l : labels) label_width = std::max(label_width, l.size());
  const std::size_t cell = 7;

  std::ostringstream out;
  out << "system: " << doc["system"].get<std::string>() << "  (cells: permanent+adjustment)\n";
  out << pad_right("", label_width);
  for (const std::string& p : parties) out << pad_left(p, cell);
  out << pad_left("total", cell + 2) << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << pad_right(labels[i], label_width);
    for (std::size_t j = 0; j < parties.size(); ++j) {
      const int p = doc["permanent"][i][j].get<int>();
      const int a = doc["adjustment"][i][j].get<int>();
      out << pad_left(a ? std::to_string(p) + "+" + std::to_string(a) : std::to_string(p), cell);
    }
    out << pad_left(std::to_string(doc["constituency_totals"][i].get<int>()), cell + 2) << '\n';
  }
  auto vector_row = [&](const std::string& name, const Json& v) {
    out << pad_right(name, label_width);
    int sum = 0;
    for (const auto& x : v) {
      out << pad_left(std::to_string(x.get<int>()), cell);
      sum += x.get<int>();
    }
    out << pad_left(std::to_string(sum), cell + 2) << '\n';
  };
  vector_row("seats", doc["party_totals"]);
  vector_row("targets", doc["targets"]);
  vector_row("proportional", doc["national_targets"]);
  if (doc["system"] == "current") {
    out << "BUT parties:";
    if (doc["but_parties"].empty()) out << " none";
    for (const auto& p : doc["but_parties"]) out << ' ' << p.get<std::string>();
    out << '\n';
  } else {
    out << "stop index: " << doc["stop_index"].get<int>() << '\n';
  }
  out << "adjustment seats: " << doc["adjustment_count"].get<int>() << '\n';
  if (doc["any_tie"].get<bool>()) out << "note: at least one tie was broken\n";
  if (doc["needs_review"].get<bool>()) out << "note: several constituency-only seats; review\n";
  return out.str();
}

std::string render_report(const Json& doc) {
  std::ostringstream out;
  out << "category: " << doc["category"].get<std::string>();
  if (doc.contains("basis")) out << " (basis: " << doc["basis"].get<std::string>() << ")";
  out << "\nLH " << doc["lh"].get<std::string>() << "  (" << doc["lh_full"].get<std::string>()
      << ")\nSL " << doc["sl"].get<std::string>() << "  (" << doc["sl_full"].get<std::string>()
      << ")\n";
  return out.str();
}

std::string render_batch(const Json& doc) {
  std::ostringstream out;
  const Json& adj = doc["adjustment_seats"];
  out << "replications: " << doc["config"]["n"].get<int>()
      << "  seed: " << doc["config"]["seed"].get<std::uint64_t>() << '\n';
  out << "adjustment seats: mean " << format_fixed(adj["mean"].get<double>(), 2) << ", sd "
      << format_fixed(adj["sd"].get<double>(), 2) << ", range " << adj["min"].get<int>() << "-"
      << adj["max"].get<int>() << '\n';
  for (const auto& bin : doc["histogram"]) {
    out << "  " << pad_right(bin["bin"].get<std::string>(), 9) << pad_left(std::to_string(bin["count"].get<int>()), 7)
        << '\n';
  }
  out << "BUT in current system: " << doc["but_count"].get<int>() << " ("
      << format_fixed(100 * doc["but_rate"].get<double>(), 1) << "%)\n";
  const Json& cm = doc["constituency_measures"];
  out << "mean constituency LH/SL: dynamic " << format_fixed(cm["dynamic"]["lh"].get<double>(), 2)
      << "/" << format_fixed(cm["dynamic"]["sl"].get<double>(), 2) << ", current "
      << format_fixed(cm["current"]["lh"].get<double>(), 2) << "/"
      << format_fixed(cm["current"]["sl"].get<double>(), 2) << '\n';
  const Json& nm = doc["nonmono"];
  out << "non-monotonicity triples: " << nm["triples"].get<int>() << '\n';
  for (const char* s : {"concentrated", "proportional"}) {
    out << "  " << s << ": lost permanent " << nm[s]["lost_permanent"].get<int>()
        << ", regained as adjustment " << nm[s]["regained_adjustment"].get<int>()
        << ", candidate lost " << nm[s]["candidate_lost"].get<int>() << '\n';
  }
  if (doc["exactness_failures"].get<int>() != 0) {
    out << "warning: " << doc["exactness_failures"].get<int>()
        << " dynamic outcomes missed their targets\n";
  }
  return out.str();
}

std::string render_whatif(const Json& doc) {
  std::ostringstream out;
  out << "system: " << doc["system"].get<std::string>() << '\n';
  if (doc["changes"].empty()) {
    out << "no seat changes\n";
    return out.str();
  }
  for (const auto& c : doc["changes"]) {
    out << c["constituency"].get<std::string>() << " / " << c["party"].get<std::string>()
        << ": permanent " << c["permanent_before"].get<int>() << " -> "
        << c["permanent_after"].get<int>() << ", adjustment " << c["adjustment_before"].get<int>()
        << " -> " << c["adjustment_after"].get<int>() << '\n';
  }
  return out.str();
}

std::string histogram_csv(const BatchStats& stats) {
  std::ostringstream out;
  out << "bin,count\n";
  for (std::size_t b = 0; b < stats.decade_histogram.size(); ++b) {
    out << 10 * b << "-" << 10 * b + 9 << ',' << stats.decade_histogram[b] << '\n';
  }
  return out.str();
}

}  // namespace dynseat
