#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynseat/io.hpp"

using namespace dynseat;

namespace {

enum Exit { ok = 0, failure = 1, parse_failure = 2, rule_failure = 3, missing_seed = 4 };

struct Common {
  std::string election;
  std::string rules;
  std::string system = "dynamic";
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c, bool with_system) {
  cmd->add_option("election", c.election, "Election CSV file")->required();
  cmd->add_option("rules", c.rules, "Rules JSON file")->required();
  if (with_system) {
    cmd->add_option("--system", c.system, "current or dynamic")
        ->check(CLI::IsMember({"current", "dynamic"}));
  }
  cmd->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

System parse_system(const std::string& s) { return s == "current" ? System::current : System::dynamic; }

ConstituencyBasis parse_basis(const std::string& s) {
  return s == "cast-votes" ? ConstituencyBasis::cast_votes : ConstituencyBasis::entitled;
}

VoteDelta parse_delta(const std::string& text, const ElectionInput& input) {
  // Labels may contain colons, so split at the last two.
  const auto second = text.rfind(':');
  const auto first = second == std::string::npos || second == 0 ? std::string::npos
                                                                 : text.rfind(':', second - 1);
  if (first == std::string::npos) {
    throw ParseError("delta '" + text + "' is not constituency:party:change");
  }
  std::string amount = text.substr(second + 1);
  if (!amount.empty() && amount[0] == '+') amount.erase(0, 1);
  Votes change = 0;
  try {
    std::size_t used = 0;
    change = std::stoll(amount, &used);
    if (used != amount.size()) throw std::invalid_argument(amount);
  } catch (const std::exception&) {
    throw ParseError("delta '" + text + "' has a bad vote change");
  }
  return VoteDelta{input.constituency_index(text.substr(0, first)),
                   input.party_index(text.substr(first + 1, second - first - 1)), change};
}

void emit(const Json& doc, const std::string& format, std::string (*render)(const Json&)) {
  if (format == "table") {
    std::cout << render(doc);
  } else {
    std::cout << doc.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seat allocation for the Swedish parliament: current and dynamic adjustment"};
  app.require_subcommand(1);

  Common alloc;
  auto* allocate_cmd = app.add_subcommand("allocate", "Allocate seats and print the seat matrix");
  add_common(allocate_cmd, alloc, true);

  Common met;
  std::string category = "party";
  std::string basis = "entitled";
  auto* metrics_cmd = app.add_subcommand("metrics", "Disproportionality of an allocation");
  add_common(metrics_cmd, met, true);
  metrics_cmd->add_option("--category", category, "party, constituency or pair")
      ->check(CLI::IsMember({"party", "constituency", "pair"}));
  metrics_cmd->add_option("--basis", basis, "constituency basis: entitled or cast-votes")
      ->check(CLI::IsMember({"entitled", "cast-votes"}));

  Common sim;
  std::optional<std::uint64_t> seed;
  PerturbationConfig config;
  std::string histogram_out;
  std::string compare_rules;
  std::string sim_basis = "entitled";
  bool no_nonmono = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo study around an election");
  add_common(simulate_cmd, sim, false);
  simulate_cmd->add_option("--seed", seed, "Random seed (required)");
  simulate_cmd->add_option("--n", config.n_replications, "Replications")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--low", config.factor_low, "Lower perturbation factor");
  simulate_cmd->add_option("--high", config.factor_high, "Upper perturbation factor");
  simulate_cmd->add_option("--threads", config.threads, "Worker threads, 0 for all cores");
  simulate_cmd->add_option("--histogram-out", histogram_out, "Write bin,count rows here");
  simulate_cmd->add_option("--compare-rules", compare_rules,
                           "Rules for the current-system comparison (default: Swedish)");
  simulate_cmd->add_option("--basis", sim_basis, "Constituency basis: entitled or cast-votes")
      ->check(CLI::IsMember({"entitled", "cast-votes"}));
  simulate_cmd->add_flag("--no-nonmono", no_nonmono, "Skip the non-monotonicity probes");

  Common wi;
  std::vector<std::string> deltas;
  auto* whatif_cmd = app.add_subcommand("whatif", "Seat changes after altering some vote counts");
  add_common(whatif_cmd, wi, true);
  whatif_cmd->add_option("--delta", deltas, "constituency:party:+n or -n, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : parse_failure;
  }

  try {
    if (*allocate_cmd) {
      const ElectionInput input = read_election_file(alloc.election);
      const RulesDocument rules = read_rules_file(alloc.rules);
      const SeatOutcome out = allocate(parse_system(alloc.system), input, rules.rules, rules.dynamic);
      emit(outcome_to_json(input, out), alloc.format, render_outcome);
    } else if (*metrics_cmd) {
      const ElectionInput input = read_election_file(met.election);
      const RulesDocument rules = read_rules_file(met.rules);
      const SeatOutcome out = allocate(parse_system(met.system), input, rules.rules, rules.dynamic);
      const Category cat = category == "party"          ? Category::party
                           : category == "constituency" ? Category::constituency
                                                        : Category::pair;
      Json doc = report_to_json(report(input, out, cat, parse_basis(basis)));
      doc["system"] = met.system;
      emit(doc, met.format, render_report);
    } else if (*simulate_cmd) {
      if (!seed) {
        std::cerr << "error: simulate needs --seed; there is no time-based default\n";
        return missing_seed;
      }
      const ElectionInput input = read_election_file(sim.election);
      const RulesDocument rules = read_rules_file(sim.rules);
      const ElectionRules current =
          compare_rules.empty() ? ElectionRules::swedish_current() : read_rules_file(compare_rules).rules;
      config.seed = *seed;
      config.scan_nonmono = !no_nonmono;
      config.basis = parse_basis(sim_basis);
      const BatchStats stats = run_batch(input, rules.rules, current, rules.dynamic, config);
      if (!histogram_out.empty()) {
        std::ofstream f(histogram_out);
        if (!f) throw Error("cannot write '" + histogram_out + "'");
        f << histogram_csv(stats);
      }
      emit(batch_to_json(stats, config), sim.format, render_batch);
    } else if (*whatif_cmd) {
      const ElectionInput input = read_election_file(wi.election);
      const RulesDocument rules = read_rules_file(wi.rules);
      std::vector<VoteDelta> parsed;
      for (const std::string& d : deltas) parsed.push_back(parse_delta(d, input));
      const WhatIfResult res =
          what_if(input, rules.rules, parse_system(wi.system), parsed, rules.dynamic);
      emit(whatif_to_json(input, res), wi.format, render_whatif);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return parse_failure;
  } catch (const RuleViolation& e) {
    std::cerr << "rule violation: " << e.what() << '\n';
    return rule_failure;
  } catch (const AllZeroVotes& e) {
    std::cerr << "rule violation: " << e.what() << '\n';
    return rule_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
  return ok;
}
