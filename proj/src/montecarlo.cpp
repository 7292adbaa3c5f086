#include "dynseat/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <tuple>
#include <mutex>
#include <thread>

namespace dynseat {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr Votes kProbeLimit = Votes{1} << 40;

// Constituency LH and SL in doubles. The exact versions live in metrics; the
// batch only needs the values for summary statistics.
std::pair<double, double> constituency_measures(const ElectionInput& input,
                                                const SeatOutcome& outcome,
                                                ConstituencyBasis basis) {
  const std::vector<Votes> base =
      basis == ConstituencyBasis::entitled ? input.entitled : input.votes.row_sums();
  const std::vector<int> seats = outcome.constituency_totals();
  double V = 0, S = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    V += double(base[i]);
    S += double(seats[i]);
  }
  double lh = 0, sl = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double v = double(base[i]) / V;
    const double s = double(seats[i]) / S;
    lh += std::abs(v - s);
    if (base[i] > 0) sl += (v - s) * (v - s) / v;
  }
  return {50 * lh, 100 * sl};
}

void tally(NonMonoCounts& counts, const ProbeResult& r) {
  counts.lost_permanent += r.b_lost_permanent_in_k;
  counts.regained_adjustment += r.b_lost_permanent_in_k && r.b_gained_adjustment_in_k;
  counts.candidate_lost += r.candidate_lost;
}

}  // namespace

void PerturbationConfig::validate() const {
  if (n_replications < 1) throw RuleViolation("need at least one replication");
  if (!(factor_low > 0) || factor_low > factor_high) {
    throw RuleViolation("perturbation factors must satisfy 0 < low <= high");
  }
}

std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

double uniform_factor(std::mt19937_64& engine, double low, double high) {
  const double u = double(engine() >> 11) * 0x1.0p-53;
  return low + (high - low) * u;
}

Grid<Votes> perturb(const Grid<Votes>& votes, double low, double high, std::mt19937_64& engine) {
  std::vector<double> party(votes.cols());
  for (double& p : party) p = uniform_factor(engine, low, high);
  Grid<Votes> out(votes.rows(), votes.cols(), 0);
  for (std::size_t i = 0; i < votes.rows(); ++i) {
    for (std::size_t j = 0; j < votes.cols(); ++j) {
      const double x = uniform_factor(engine, low, high);
      out(i, j) = static_cast<Votes>(std::floor(double(votes(i, j)) * party[j] * x + 0.5));
    }
  }
  return out;
}

ElectionInput perturb(const ElectionInput& input, const PerturbationConfig& config,
                      std::uint64_t replication) {
  std::mt19937_64 engine = replication_engine(config.seed, replication);
  ElectionInput out = input;
  out.votes = perturb(input.votes, config.factor_low, config.factor_high, engine);
  return out;
}

std::optional<NonMonoTriple> find_nonmono_triple(const ElectionInput& input,
                                                 const ElectionRules& rules,
                                                 const SeatOutcome& outcome) {
  const AwardList nat = national_awards(input, rules);
  if (nat.order.empty()) return std::nullopt;
  const std::size_t a = nat.order.back();

  // B: best comparison number for the next national seat, A excluded.
  const Eligibility el = eligibility(input, rules);
  const std::vector<Votes> totals = input.party_totals();
  std::vector<std::size_t> best;
  Quotient top;
  for (std::size_t j = 0; j < input.n_parties(); ++j) {
    if (j == a || !el.national[j] || totals[j] == 0) continue;
    const Quotient q{totals[j], rules.national_divisors.divisor(nat.totals[j])};
    const auto ord = best.empty() ? std::strong_ordering::greater : compare_quotients(q, top);
    if (ord > 0) {
      best.assign(1, j);
      top = q;
    } else if (ord == 0) {
      best.push_back(j);
    }
  }
  if (best.empty()) return std::nullopt;
  const std::size_t b = rules.tie.pick(best, nat.order.size());

  // A must have been filled entirely with permanent seats.
  if (outcome.adjustment.column_sums()[a] != 0) return std::nullopt;
  if (outcome.permanent.column_sums()[a] != nat.totals[a]) return std::nullopt;

  // Last permanent seat of A, then B's permanent seats after it (up to the stop).
  int last_a = -1;
  for (const SeatAward& s : outcome.award_log) {
    if (s.phase == Phase::permanent && s.party == a) last_a = s.seat;
  }
  if (last_a < 0) return std::nullopt;
  std::optional<NonMonoTriple> found;
  for (const SeatAward& s : outcome.award_log) {
    if (s.phase == Phase::permanent && s.party == b && s.seat > last_a) {
      found = NonMonoTriple{a, b, s.constituency};
    }
  }
  return found;
}

std::optional<NonMonoTriple> find_nonmono_triple(const ElectionInput& input,
                                                 const ElectionRules& rules,
                                                 const DynamicOptions& opts) {
  return find_nonmono_triple(input, rules, allocate_dynamic(input, rules, opts));
}

const char* to_string(ProbeStrategy s) {
  return s == ProbeStrategy::concentrated ? "concentrated" : "proportional";
}

std::vector<VoteDelta> probe_deltas(const ElectionInput& input, const NonMonoTriple& triple,
                                    ProbeStrategy strategy, Votes total) {
  if (total <= 0) return {};
  if (strategy == ProbeStrategy::concentrated) {
    return {VoteDelta{triple.k, triple.b, total}};
  }
  // total - 1 votes spread like B's existing votes, then one more in K.
  const std::vector<Votes> column = input.votes.column(triple.b);
  if (total - 1 > std::numeric_limits<int>::max()) throw InfeasibleProbe("probe addition too large");
  const std::vector<int> spread =
      hamilton_allocate(column, static_cast<int>(total - 1), TieRule::lowest_index()).seats;
  std::vector<VoteDelta> deltas;
  for (std::size_t i = 0; i < spread.size(); ++i) {
    const Votes extra = spread[i] + (i == triple.k ? 1 : 0);
    if (extra != 0) deltas.push_back(VoteDelta{i, triple.b, extra});
  }
  return deltas;
}

ProbeResult probe_nonmono(const ElectionInput& input, const ElectionRules& rules,
                          const NonMonoTriple& triple, ProbeStrategy strategy,
                          const DynamicOptions& opts) {
  const std::vector<int> base = national_reference(input, rules);
  auto flips = [&](Votes total) {
    const ElectionInput changed = apply_deltas(input, probe_deltas(input, triple, strategy, total));
    return national_reference(changed, rules)[triple.b] > base[triple.b];
  };

  // Exponential bracket, then bisection: flips(lo) false, flips(hi) true.
  Votes lo = 0;
  Votes hi = 1;
  while (!flips(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > kProbeLimit) throw InfeasibleProbe("no finite addition gives B another seat");
  }
  while (hi - lo > 1) {
    const Votes mid = lo + (hi - lo) / 2;
    (flips(mid) ? hi : lo) = mid;
  }

  ProbeResult res;
  res.votes_added = hi;
  res.minimal_certified = hi == 1 || !flips(hi - 1);
  const ElectionInput changed = apply_deltas(input, probe_deltas(input, triple, strategy, hi));
  res.seat_taken_from_a = national_reference(changed, rules)[triple.a] < base[triple.a];

  const SeatOutcome before = allocate_dynamic(input, rules, opts);
  const SeatOutcome after = allocate_dynamic(changed, rules, opts);
  const std::size_t k = triple.k;
  const std::size_t b = triple.b;
  res.b_lost_permanent_in_k = after.permanent(k, b) < before.permanent(k, b);
  res.b_gained_adjustment_in_k = after.adjustment(k, b) > before.adjustment(k, b);
  res.candidate_lost = after.permanent(k, b) + after.adjustment(k, b) <
                       before.permanent(k, b) + before.adjustment(k, b);
  return res;
}

BatchStats run_batch(const ElectionInput& input, const ElectionRules& dynamic_rules,
                     const ElectionRules& current_rules, const DynamicOptions& opts,
                     const PerturbationConfig& config) {
  config.validate();
  input.validate();
  dynamic_rules.validate();
  current_rules.validate();

  const int n = config.n_replications;
  BatchStats stats;
  stats.n_replications = n;
  stats.replications.resize(n);

  auto run_one = [&](int r) {
    ReplicationRecord& rec = stats.replications[r];
    const ElectionInput sim = perturb(input, config, static_cast<std::uint64_t>(r));
    const SeatOutcome dyn = allocate_dynamic(sim, dynamic_rules, opts);
    const SeatOutcome cur = allocate_current(sim, current_rules);
    rec.adjustment_count = dyn.adjustment_count;
    rec.but = !cur.but_parties.empty();
    rec.dynamic_exact = true;
    const std::vector<int> totals = dyn.party_totals();
    for (std::size_t j = 0; j < totals.size(); ++j) {
      rec.dynamic_exact = rec.dynamic_exact && totals[j] == dyn.targets[j];
    }
    std::tie(rec.lh_dynamic, rec.sl_dynamic) = constituency_measures(sim, dyn, config.basis);
    std::tie(rec.lh_current, rec.sl_current) = constituency_measures(sim, cur, config.basis);
    if (config.scan_nonmono) {
      rec.triple = find_nonmono_triple(sim, dynamic_rules, dyn);
      if (rec.triple) {
        rec.concentrated =
            probe_nonmono(sim, dynamic_rules, *rec.triple, ProbeStrategy::concentrated, opts);
        rec.proportional =
            probe_nonmono(sim, dynamic_rules, *rec.triple, ProbeStrategy::proportional, opts);
      }
    }
  };

  unsigned width = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : config.threads;
  width = std::min<unsigned>(width, static_cast<unsigned>(n));
  std::atomic<int> next{0};
  std::mutex failure_mutex;
  int failed_at = n;
  std::string failure;

  auto worker = [&] {
    for (int r = next++; r < n; r = next++) {
      try {
        run_one(r);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (r < failed_at) {
          failed_at = r;
          failure = e.what();
        }
      }
    }
  };
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed_at < n) throw BatchError(failed_at, failure);

  // Aggregate in replication order so the result is independent of scheduling.
  double sum = 0, sum_sq = 0;
  stats.min_adjustment = stats.replications.front().adjustment_count;
  for (const ReplicationRecord& rec : stats.replications) {
    const int c = rec.adjustment_count;
    if (static_cast<std::size_t>(c) >= stats.raw_histogram.size()) {
      stats.raw_histogram.resize(c + 1, 0);
    }
    ++stats.raw_histogram[c];
    if (static_cast<std::size_t>(c / 10) >= stats.decade_histogram.size()) {
      stats.decade_histogram.resize(c / 10 + 1, 0);
    }
    ++stats.decade_histogram[c / 10];
    sum += c;
    sum_sq += double(c) * c;
    stats.max_adjustment = std::max(stats.max_adjustment, c);
    stats.min_adjustment = std::min(stats.min_adjustment, c);
    stats.but_count += rec.but;
    stats.exactness_failures += !rec.dynamic_exact;
    stats.mean_lh_dynamic += rec.lh_dynamic;
    stats.mean_sl_dynamic += rec.sl_dynamic;
    stats.mean_lh_current += rec.lh_current;
    stats.mean_sl_current += rec.sl_current;
    if (rec.triple) ++stats.triples;
    if (rec.concentrated) tally(stats.concentrated, *rec.concentrated);
    if (rec.proportional) tally(stats.proportional, *rec.proportional);
  }
  stats.mean_adjustment = sum / n;
  stats.sd_adjustment =
      n > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1))) : 0.0;
  stats.mean_lh_dynamic /= n;
  stats.mean_sl_dynamic /= n;
  stats.mean_lh_current /= n;
  stats.mean_sl_current /= n;
  return stats;
}

}  // namespace dynseat
