#include "dynseat/systems.hpp"

#include <algorithm>
#include <set>

namespace dynseat {

namespace {

bool meets(Votes part, Votes whole, const Rational& share) {
  // part / whole >= num / den
  return Wide(part) * share.den >= Wide(share.num) * whole;
}

std::vector<Votes> local_row(const ElectionInput& input, const Eligibility& el, std::size_t i) {
  std::vector<Votes> row(input.n_parties(), 0);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (el.local(i, j)) row[j] = input.votes(i, j);
  }
  return row;
}

std::vector<Votes> national_row(const ElectionInput& input, const Eligibility& el) {
  std::vector<Votes> totals = input.party_totals();
  for (std::size_t j = 0; j < totals.size(); ++j) {
    if (!el.national[j]) totals[j] = 0;
  }
  return totals;
}

void fill_adjustment(const ElectionInput& input, const ElectionRules& rules,
                     const std::vector<int>& deficit, SeatOutcome& out) {
  for (std::size_t j = 0; j < input.n_parties(); ++j) {
    if (deficit[j] < 0) {
      throw InfeasibleAdjustment("party " + input.parties[j] + " is " +
                                 std::to_string(-deficit[j]) + " seat(s) over its target");
    }
    if (deficit[j] == 0) continue;
    const std::vector<Votes> column = input.votes.column(j);
    const std::vector<int> held = out.permanent.column(j);
    const AwardList awards =
        award_sequence(column, deficit[j], rules.adjustment_divisors, rules.tie, held);
    for (std::size_t k = 0; k < awards.order.size(); ++k) {
      const std::size_t i = awards.order[k];
      ++out.adjustment(i, j);
      out.award_log.push_back(SeatAward{static_cast<int>(out.award_log.size()) + 1, i, j,
                                        Phase::adjustment, bool(awards.tied[k]), false, false});
    }
  }
}

void check_house(const SeatOutcome& out, const ElectionRules& rules) {
  const int total = out.permanent.sum() + out.adjustment.sum();
  if (total != rules.house_size) {
    throw InfeasibleAdjustment("allocated " + std::to_string(total) + " seats, house has " +
                               std::to_string(rules.house_size));
  }
}

}  // namespace

const char* to_string(System s) { return s == System::current ? "current" : "dynamic"; }
const char* to_string(Phase p) { return p == Phase::permanent ? "permanent" : "adjustment"; }

std::size_t ElectionInput::party_index(const std::string& label) const {
  auto it = std::find(parties.begin(), parties.end(), label);
  if (it == parties.end()) throw RuleViolation("unknown party '" + label + "'");
  return static_cast<std::size_t>(it - parties.begin());
}

std::size_t ElectionInput::constituency_index(const std::string& label) const {
  auto it = std::find(constituencies.begin(), constituencies.end(), label);
  if (it == constituencies.end()) throw RuleViolation("unknown constituency '" + label + "'");
  return static_cast<std::size_t>(it - constituencies.begin());
}

void ElectionInput::validate() const {
  if (parties.empty()) throw RuleViolation("election has no parties");
  if (constituencies.empty()) throw RuleViolation("election has no constituencies");
  if (votes.rows() != constituencies.size() || votes.cols() != parties.size()) {
    throw RuleViolation("vote matrix is " + std::to_string(votes.rows()) + "x" +
                        std::to_string(votes.cols()) + " but labels give " +
                        std::to_string(constituencies.size()) + "x" +
                        std::to_string(parties.size()));
  }
  if (entitled.size() != constituencies.size()) {
    throw RuleViolation("entitled-voter vector does not match constituencies");
  }
  for (std::size_t i = 0; i < votes.rows(); ++i) {
    for (std::size_t j = 0; j < votes.cols(); ++j) {
      if (votes(i, j) < 0) {
        throw NegativeVotes("negative votes for " + parties[j] + " in " + constituencies[i]);
      }
    }
    if (entitled[i] <= 0) {
      throw RuleViolation("entitled voters must be positive in " + constituencies[i]);
    }
  }
  for (const auto* labels : {&parties, &constituencies}) {
    std::set<std::string> seen(labels->begin(), labels->end());
    if (seen.size() != labels->size()) throw RuleViolation("duplicate labels");
  }
}

ElectionRules ElectionRules::swedish_current() { return ElectionRules{}; }

ElectionRules ElectionRules::dynamic_pure() {
  ElectionRules r;
  r.within_constituency_divisors = DivisorSequence::pure();
  return r;
}

void ElectionRules::validate() const {
  if (house_size <= 0) throw RuleViolation("house size must be positive");
  if (permanent_seats < 0 || permanent_seats > house_size) {
    throw RuleViolation("permanent seats must lie in [0, house size]");
  }
  for (const Rational* t : {&national_threshold, &constituency_threshold}) {
    if (t->den <= 0 || *t < Rational{0, 1} || !(*t < Rational{1, 1})) {
      throw RuleViolation("threshold " + t->to_string() + " outside [0, 1)");
    }
  }
}

Grid<int> SeatOutcome::seats() const {
  Grid<int> total = permanent;
  for (std::size_t i = 0; i < total.rows(); ++i)
    for (std::size_t j = 0; j < total.cols(); ++j) total(i, j) += adjustment(i, j);
  return total;
}

std::vector<int> SeatOutcome::party_totals() const { return seats().column_sums(); }
std::vector<int> SeatOutcome::constituency_totals() const { return seats().row_sums(); }

bool SeatOutcome::any_tie() const {
  return std::any_of(award_log.begin(), award_log.end(), [](const SeatAward& a) { return a.tie; });
}

Eligibility eligibility(const ElectionInput& input, const ElectionRules& rules) {
  const std::size_t C = input.n_constituencies();
  const std::size_t P = input.n_parties();
  Eligibility el{std::vector<bool>(P, false), Grid<char>(C, P, 0)};
  const std::vector<Votes> totals = input.party_totals();
  Votes all = 0;
  for (Votes v : totals) all += v;
  for (std::size_t j = 0; j < P; ++j) {
    el.national[j] = totals[j] > 0 && meets(totals[j], all, rules.national_threshold);
  }
  const std::vector<Votes> rows = input.votes.row_sums();
  for (std::size_t i = 0; i < C; ++i) {
    for (std::size_t j = 0; j < P; ++j) {
      const Votes v = input.votes(i, j);
      el.local(i, j) = el.national[j] || (v > 0 && meets(v, rows[i], rules.constituency_threshold));
    }
  }
  return el;
}

AwardList national_awards(const ElectionInput& input, const ElectionRules& rules) {
  const Eligibility el = eligibility(input, rules);
  const std::vector<Votes> totals = national_row(input, el);
  return award_sequence(totals, rules.house_size, rules.national_divisors, rules.tie);
}

std::vector<int> national_reference(const ElectionInput& input, const ElectionRules& rules) {
  input.validate();
  rules.validate();
  return national_awards(input, rules).totals;
}

SeatOutcome allocate_current(const ElectionInput& input, const ElectionRules& rules) {
  input.validate();
  rules.validate();
  const std::size_t C = input.n_constituencies();
  const std::size_t P = input.n_parties();
  const Eligibility el = eligibility(input, rules);

  SeatOutcome out;
  out.system = System::current;
  out.permanent = Grid<int>(C, P, 0);
  out.adjustment = Grid<int>(C, P, 0);

  // Permanent seats to constituencies by entitled voters.
  out.constituency_permanent = hamilton_allocate(input.entitled, rules.permanent_seats, rules.tie).seats;

  // Permanent seats within each row.
  for (std::size_t i = 0; i < C; ++i) {
    const std::vector<Votes> row = local_row(input, el, i);
    const AwardList awards = award_sequence(row, out.constituency_permanent[i],
                                            rules.within_constituency_divisors, rules.tie);
    for (std::size_t k = 0; k < awards.order.size(); ++k) {
      const std::size_t j = awards.order[k];
      ++out.permanent(i, j);
      out.award_log.push_back(SeatAward{static_cast<int>(out.award_log.size()) + 1, i, j,
                                        Phase::permanent, bool(awards.tied[k]), false,
                                        !el.national[j]});
    }
  }
  const std::vector<int> held = out.permanent.column_sums();

  // Constituency-only winners keep their seats outside the national computation.
  int local_only_seats = 0;
  for (std::size_t j = 0; j < P; ++j) {
    if (!el.national[j]) local_only_seats += held[j];
  }

  // National targets. Parties whose permanent seats already exceed their
  // target keep them and drop out; the rest is recomputed until stable.
  const std::vector<Votes> totals = national_row(input, el);
  out.national_targets =
      award_sequence(totals, rules.house_size, rules.national_divisors, rules.tie).totals;

  std::vector<bool> frozen(P, false);
  std::vector<int> targets(P, 0);
  for (std::size_t round = 0; round <= P; ++round) {
    int house = rules.house_size - local_only_seats;
    std::vector<Votes> active = totals;
    for (std::size_t j = 0; j < P; ++j) {
      if (frozen[j]) {
        house -= held[j];
        active[j] = 0;
      }
    }
    const bool anyone = std::any_of(active.begin(), active.end(), [](Votes v) { return v > 0; });
    targets = anyone ? award_sequence(active, house, rules.national_divisors, rules.tie).totals
                     : std::vector<int>(P, 0);
    bool changed = false;
    for (std::size_t j = 0; j < P; ++j) {
      if (el.national[j] && !frozen[j] && held[j] > targets[j]) {
        frozen[j] = true;
        changed = true;
      }
    }
    if (!changed) break;
    if (round == P) throw InfeasibleAdjustment("BUT iteration did not reach a fixpoint");
  }

  std::vector<int> deficit(P, 0);
  out.targets.assign(P, 0);
  for (std::size_t j = 0; j < P; ++j) {
    if (frozen[j]) {
      out.but_parties.push_back(j);
      out.targets[j] = held[j];
    } else if (el.national[j]) {
      out.targets[j] = targets[j];
      deficit[j] = targets[j] - held[j];
    } else {
      out.targets[j] = held[j];
    }
  }

  // Adjustment seats within each column.
  fill_adjustment(input, rules, deficit, out);
  check_house(out, rules);
  out.stop_index = out.permanent.sum();
  out.adjustment_count = out.adjustment.sum();
  return out;
}

SeatOutcome allocate_dynamic(const ElectionInput& input, const ElectionRules& rules,
                             const DynamicOptions& opts) {
  input.validate();
  rules.validate();
  const std::size_t C = input.n_constituencies();
  const std::size_t P = input.n_parties();
  const int house = rules.house_size;

  const int floor = opts.constituency_floor.value_or(0);
  const int minimum = opts.min_permanent.value_or(0);
  if (floor < 0 || std::int64_t(floor) * std::int64_t(C) > house) {
    throw InfeasibleFloor("constituency floor of " + std::to_string(floor) + " seats times " +
                          std::to_string(C) + " constituencies exceeds house size " +
                          std::to_string(house));
  }
  if (minimum < 0 || minimum > house) {
    throw InfeasibleFloor("minimum permanent seats " + std::to_string(minimum) +
                          " outside [0, " + std::to_string(house) + "]");
  }

  const Eligibility el = eligibility(input, rules);
  const AwardList list = award_sequence(input.entitled, house, rules.list_divisors, rules.tie);
  const AwardList nat = national_awards(input, rules);

  SeatOutcome out;
  out.system = System::dynamic;
  out.permanent = Grid<int>(C, P, 0);
  out.adjustment = Grid<int>(C, P, 0);
  out.national_targets = nat.totals;

  std::vector<int> target = nat.totals;
  std::vector<int> column(P, 0);
  int nat_remaining = house;  // national awards still backing a target
  int placed = 0;
  int local_only_seats = 0;

  enum class Result { placed, stop, blocked };
  struct Placement {
    Result result;
    bool skipped_leader;
  };

  // Gives one permanent seat to row i. Without `forced` the first violation is
  // the stop; with it, full parties are passed over in favour of the next
  // party in the row.
  auto place = [&](std::size_t i, bool forced) -> Placement {
    std::vector<Votes> row = local_row(input, el, i);
    bool skipped = false;
    for (;;) {
      if (std::all_of(row.begin(), row.end(), [](Votes v) { return v == 0; })) {
        return {Result::blocked, skipped};
      }
      const AwardList next =
          award_sequence(row, 1, rules.within_constituency_divisors, rules.tie,
                         out.permanent.row(i));
      const std::size_t j = next.order.front();
      const bool local_only = !el.national[j];
      bool fits = false;
      std::size_t donor = 0;
      if (local_only) {
        if (nat_remaining > 0) {
          donor = nat.order[nat_remaining - 1];
          fits = column[donor] < target[donor];
        }
      } else {
        fits = column[j] < target[j];
      }
      if (fits) {
        if (local_only) {
          --target[donor];
          --nat_remaining;
          ++local_only_seats;
        }
        ++out.permanent(i, j);
        ++column[j];
        ++placed;
        out.award_log.push_back(SeatAward{placed, i, j, Phase::permanent, bool(next.tied.front()),
                                          skipped, local_only});
        return {Result::placed, skipped};
      }
      if (!forced) return {Result::stop, skipped};
      skipped = true;
      row[j] = 0;
    }
  };

  // Pre-granted floor seats; each consumes that row's earliest list entries.
  std::vector<int> skip(C, 0);
  bool stop_seen = false;
  if (floor > 0) {
    for (std::size_t i = 0; i < C; ++i) {
      for (int f = 0; f < floor; ++f) {
        const Placement p = place(i, true);
        if (p.result != Result::placed) {
          throw InfeasibleFloor("cannot give " + input.constituencies[i] + " its " +
                                std::to_string(floor) + " floor seats");
        }
      }
      skip[i] = floor;
    }
  }

  for (std::size_t i : list.order) {
    if (placed >= house) break;
    if (skip[i] > 0) {
      --skip[i];
      continue;
    }
    const bool forced = placed < minimum;
    const Placement p = place(i, forced);
    if (p.result == Result::placed) {
      stop_seen = stop_seen || p.skipped_leader;
      if (stop_seen && placed >= minimum) break;
      continue;
    }
    if (!forced) break;
    stop_seen = true;
  }

  out.stop_index = placed;
  out.adjustment_count = house - placed;
  out.constituency_permanent = out.permanent.row_sums();
  out.needs_review = local_only_seats > 1;

  std::vector<int> deficit(P, 0);
  out.targets.assign(P, 0);
  for (std::size_t j = 0; j < P; ++j) {
    if (el.national[j]) {
      out.targets[j] = target[j];
      deficit[j] = target[j] - column[j];
    } else {
      out.targets[j] = column[j];
    }
  }
  fill_adjustment(input, rules, deficit, out);
  check_house(out, rules);
  return out;
}

SeatOutcome allocate(System system, const ElectionInput& input, const ElectionRules& rules,
                     const DynamicOptions& opts) {
  return system == System::current ? allocate_current(input, rules)
                                   : allocate_dynamic(input, rules, opts);
}

ElectionInput apply_deltas(const ElectionInput& input, std::span<const VoteDelta> deltas) {
  ElectionInput out = input;
  for (const VoteDelta& d : deltas) {
    if (d.constituency >= out.n_constituencies() || d.party >= out.n_parties()) {
      throw RuleViolation("vote delta refers to a cell outside the matrix");
    }
    out.votes(d.constituency, d.party) += d.change;
  }
  for (const VoteDelta& d : deltas) {
    if (out.votes(d.constituency, d.party) < 0) {
      throw NegativeVotes("delta leaves " + out.parties[d.party] + " in " +
                          out.constituencies[d.constituency] + " with " +
                          std::to_string(out.votes(d.constituency, d.party)) + " votes");
    }
  }
  return out;
}

WhatIfResult what_if(const ElectionInput& input, const ElectionRules& rules, System system,
                     std::span<const VoteDelta> deltas, const DynamicOptions& opts) {
  WhatIfResult res;
  res.modified = apply_deltas(input, deltas);
  res.before = allocate(system, input, rules, opts);
  res.after = allocate(system, res.modified, rules, opts);
  for (std::size_t i = 0; i < input.n_constituencies(); ++i) {
    for (std::size_t j = 0; j < input.n_parties(); ++j) {
      const int dp = res.after.permanent(i, j) - res.before.permanent(i, j);
      const int da = res.after.adjustment(i, j) - res.before.adjustment(i, j);
      if (dp + da != 0) res.diff.push_back(CellChange{i, j, dp, da});
    }
  }
  return res;
}

}  // namespace dynseat
