#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dynseat/metrics.hpp"
#include "dynseat/systems.hpp"

namespace dynseat {

/// A replication failed; the batch is aborted and the index reported.
class BatchError : public Error {
 public:
  BatchError(int replication, const std::string& what)
      : Error("replication " + std::to_string(replication) + ": " + what),
        replication_(replication) {}
  int replication() const { return replication_; }

 private:
  int replication_;
};

class InfeasibleProbe : public Error {
 public:
  using Error::Error;
};

struct PerturbationConfig {
  int n_replications = 10000;
  double factor_low = 0.9;
  double factor_high = 1.1;
  std::uint64_t seed = 0;
  /// Worker threads; 0 means one per hardware thread. Results do not depend on it.
  unsigned threads = 0;
  bool scan_nonmono = true;
  ConstituencyBasis basis = ConstituencyBasis::entitled;

  void validate() const;
};

/// Engine for replication `index`: mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(index)), so every replication has its own
/// stream regardless of which thread runs it.
std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t index);

/// Uniform on [low, high) from the top 53 bits of one engine draw.
double uniform_factor(std::mt19937_64& engine, double low, double high);

/// round(v * p_j * x_ij), half up. Draws one p_j per party first, then one
/// x_ij per cell in row-major order.
Grid<Votes> perturb(const Grid<Votes>& votes, double low, double high, std::mt19937_64& engine);

/// Perturbed copy of `input` for one replication; entitled voters unchanged.
ElectionInput perturb(const ElectionInput& input, const PerturbationConfig& config,
                      std::uint64_t replication);

struct NonMonoTriple {
  std::size_t a = 0;  // holder of the last national award
  std::size_t b = 0;  // closest to the next national award
  std::size_t k = 0;  // constituency of B's permanent seat at risk

  friend bool operator==(const NonMonoTriple&, const NonMonoTriple&) = default;
};

std::optional<NonMonoTriple> find_nonmono_triple(const ElectionInput& input,
                                                 const ElectionRules& rules,
                                                 const SeatOutcome& dynamic_outcome);
std::optional<NonMonoTriple> find_nonmono_triple(const ElectionInput& input,
                                                 const ElectionRules& rules,
                                                 const DynamicOptions& opts = {});

enum class ProbeStrategy { concentrated, proportional };
const char* to_string(ProbeStrategy s);

struct ProbeResult {
  Votes votes_added = 0;
  bool b_lost_permanent_in_k = false;
  bool b_gained_adjustment_in_k = false;
  bool candidate_lost = false;
  /// The national seat B gained came from A.
  bool seat_taken_from_a = false;
  /// One vote fewer does not give B the extra national seat.
  bool minimal_certified = false;
};

/// Smallest addition to B (all in K, or spread like B's votes plus one in K)
/// that gives B one more national seat, then the dynamic outcome in K.
ProbeResult probe_nonmono(const ElectionInput& input, const ElectionRules& rules,
                          const NonMonoTriple& triple, ProbeStrategy strategy,
                          const DynamicOptions& opts = {});

/// The vote addition a probe uses for `total` extra votes.
std::vector<VoteDelta> probe_deltas(const ElectionInput& input, const NonMonoTriple& triple,
                                    ProbeStrategy strategy, Votes total);

struct NonMonoCounts {
  int lost_permanent = 0;
  int regained_adjustment = 0;
  int candidate_lost = 0;
};

struct ReplicationRecord {
  int adjustment_count = 0;
  double lh_dynamic = 0, sl_dynamic = 0;
  double lh_current = 0, sl_current = 0;
  bool but = false;
  bool dynamic_exact = true;
  std::optional<NonMonoTriple> triple;
  std::optional<ProbeResult> concentrated;
  std::optional<ProbeResult> proportional;
};

struct BatchStats {
  int n_replications = 0;
  std::vector<ReplicationRecord> replications;
  /// raw_histogram[c] = replications needing exactly c adjustment seats.
  std::vector<int> raw_histogram;
  /// decade_histogram[b] counts adjustment seats in [10b, 10b + 9].
  std::vector<int> decade_histogram;
  double mean_adjustment = 0;
  double sd_adjustment = 0;  // sample standard deviation
  int max_adjustment = 0;
  int min_adjustment = 0;
  int but_count = 0;
  int exactness_failures = 0;
  int triples = 0;
  NonMonoCounts concentrated;
  NonMonoCounts proportional;
  double mean_lh_dynamic = 0, mean_sl_dynamic = 0;
  double mean_lh_current = 0, mean_sl_current = 0;
};

/// Runs every replication: perturb, allocate with the dynamic method under
/// `dynamic_rules` and the current method under `current_rules`, measure the
/// constituency disproportionality of both and optionally probe for candidate
/// non-monotonicity.
BatchStats run_batch(const ElectionInput& input, const ElectionRules& dynamic_rules,
                     const ElectionRules& current_rules, const DynamicOptions& opts,
                     const PerturbationConfig& config);

}  // namespace dynseat
