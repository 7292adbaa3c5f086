#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dynseat/apportion.hpp"

namespace dynseat {

/// Dense row-major matrix, rows are constituencies and columns parties.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  std::vector<T> row_sums() const {
    std::vector<T> out(rows_, T{});
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c);
    return out;
  }
  std::vector<T> column_sums() const {
    std::vector<T> out(cols_, T{});
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[c] += (*this)(r, c);
    return out;
  }
  T sum() const {
    T s{};
    for (const T& v : data_) s += v;
    return s;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

class InfeasibleFloor : public RuleViolation {
 public:
  using RuleViolation::RuleViolation;
};

class NegativeVotes : public RuleViolation {
 public:
  using RuleViolation::RuleViolation;
};

/// Internal consistency failure; signals a bug rather than bad input.
class InfeasibleAdjustment : public Error {
 public:
  using Error::Error;
};

struct ElectionInput {
  std::vector<std::string> parties;
  std::vector<std::string> constituencies;
  Grid<Votes> votes;              // constituency x party
  std::vector<Votes> entitled;    // per constituency

  std::size_t n_parties() const { return parties.size(); }
  std::size_t n_constituencies() const { return constituencies.size(); }

  std::vector<Votes> party_totals() const { return votes.column_sums(); }

  std::size_t party_index(const std::string& label) const;
  std::size_t constituency_index(const std::string& label) const;

  /// Throws RuleViolation on shape mismatch, negative counts, duplicate labels
  /// or a non-positive entitled count.
  void validate() const;

  friend bool operator==(const ElectionInput&, const ElectionInput&) = default;
};

struct ElectionRules {
  int house_size = 349;
  int permanent_seats = 310;  // current system only
  Rational national_threshold{4, 100};
  Rational constituency_threshold{12, 100};
  DivisorSequence within_constituency_divisors = DivisorSequence::modified();
  DivisorSequence adjustment_divisors = DivisorSequence::pure();
  DivisorSequence national_divisors = DivisorSequence::pure();
  /// Orders the constituencies for the dynamic method's list.
  DivisorSequence list_divisors = DivisorSequence::pure();
  TieRule tie = TieRule::lowest_index();

  /// 349 seats, 310 permanent, 4% / 12%, 1.4 within constituencies.
  static ElectionRules swedish_current();
  /// Same house and thresholds with pure Sainte-Lague everywhere.
  static ElectionRules dynamic_pure();

  void validate() const;

  friend bool operator==(const ElectionRules&, const ElectionRules&) = default;
};

struct DynamicOptions {
  std::optional<int> min_permanent;
  std::optional<int> constituency_floor;

  friend bool operator==(const DynamicOptions&, const DynamicOptions&) = default;
};

enum class System { current, dynamic };
enum class Phase { permanent, adjustment };

const char* to_string(System s);
const char* to_string(Phase p);

struct SeatAward {
  int seat = 0;  // 1-based position in the award log
  std::size_t constituency = 0;
  std::size_t party = 0;
  Phase phase = Phase::permanent;
  bool tie = false;
  /// Placed past the stop because of a permanent-seat minimum or floor.
  bool forced = false;
  /// Won by a party eligible only through the constituency threshold.
  bool local_only = false;
};

struct SeatOutcome {
  System system = System::dynamic;
  Grid<int> permanent;
  Grid<int> adjustment;
  /// Proportional national allocation over all nationally eligible parties.
  std::vector<int> national_targets;
  /// Column sums the allocation actually honours (after BUT freezes or
  /// constituency-only decrements).
  std::vector<int> targets;
  std::vector<SeatAward> award_log;
  /// Current system: parties that kept excess permanent seats.
  std::vector<std::size_t> but_parties;
  /// Permanent seats per constituency (Hamilton in the current system; the
  /// number placed from the list in the dynamic one).
  std::vector<int> constituency_permanent;
  int stop_index = 0;
  int adjustment_count = 0;
  /// Set when constituency-only parties took more than one seat; repeating the
  /// target decrement per seat is our own extension and deserves a look.
  bool needs_review = false;

  Grid<int> seats() const;
  std::vector<int> party_totals() const;
  std::vector<int> constituency_totals() const;
  bool any_tie() const;
};

struct Eligibility {
  std::vector<bool> national;  // per party
  Grid<char> local;            // constituency x party
};

Eligibility eligibility(const ElectionInput& input, const ElectionRules& rules);

/// National award order over nationally eligible parties (ineligible parties
/// have their votes masked to zero), house_size awards.
AwardList national_awards(const ElectionInput& input, const ElectionRules& rules);

std::vector<int> national_reference(const ElectionInput& input, const ElectionRules& rules);

SeatOutcome allocate_current(const ElectionInput& input, const ElectionRules& rules);

SeatOutcome allocate_dynamic(const ElectionInput& input, const ElectionRules& rules,
                             const DynamicOptions& opts = {});

SeatOutcome allocate(System system, const ElectionInput& input, const ElectionRules& rules,
                     const DynamicOptions& opts = {});

struct VoteDelta {
  std::size_t constituency = 0;
  std::size_t party = 0;
  Votes change = 0;
};

struct CellChange {
  std::size_t constituency = 0;
  std::size_t party = 0;
  int permanent_change = 0;
  int adjustment_change = 0;
  int total_change() const { return permanent_change + adjustment_change; }
};

struct WhatIfResult {
  SeatOutcome before;
  SeatOutcome after;
  std::vector<CellChange> diff;  // only cells whose seat count changed
  ElectionInput modified;
};

ElectionInput apply_deltas(const ElectionInput& input, std::span<const VoteDelta> deltas);

WhatIfResult what_if(const ElectionInput& input, const ElectionRules& rules, System system,
                     std::span<const VoteDelta> deltas, const DynamicOptions& opts = {});

}  // namespace dynseat
