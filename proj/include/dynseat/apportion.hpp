#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynseat {

using Votes = std::int64_t;
using Wide = __int128;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Awards were requested but no entity has a single vote.
class AllZeroVotes : public Error {
 public:
  using Error::Error;
};

/// Input that breaks a rule invariant (bad divisor, threshold, house size...).
class RuleViolation : public Error {
 public:
  using Error::Error;
};

/// Small exact fraction with positive denominator. Only used for divisors and
/// thresholds, so both parts stay tiny.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Rational& a, const Rational& b) {
    return Wide(a.num) * b.den == Wide(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return Wide(a.num) * b.den <=> Wide(b.num) * a.den;
  }

  std::string to_string() const;
  /// Parses "7/5", "1.4", "4%" or "3".
  static Rational parse(const std::string& text);
};

/// Divisors 1st, 3, 5, 7, ...: the first one is free, award k >= 2 uses 2k-1.
class DivisorSequence {
 public:
  /// Sainte-Lague, first divisor 1.
  static DivisorSequence pure() { return DivisorSequence(Rational{1, 1}); }
  /// The Swedish modified variant, first divisor 1.4 = 7/5.
  static DivisorSequence modified() { return DivisorSequence(Rational{7, 5}); }

  explicit DivisorSequence(Rational first);

  const Rational& first() const { return first_; }

  /// Divisor applied to an entity that already holds `seats_held` awards.
  Rational divisor(int seats_held) const {
    if (seats_held == 0) return first_;
    return Rational{2 * std::int64_t(seats_held) + 1, 1};
  }

  friend bool operator==(const DivisorSequence&, const DivisorSequence&) = default;

 private:
  Rational first_;
};

struct Quotient {
  Votes votes = 0;
  Rational divisor{1, 1};
};

/// Exact comparison of votes/divisor by integer cross-multiplication.
std::strong_ordering compare_quotients(const Quotient& a, const Quotient& b);

class TieRule {
 public:
  enum class Mode { lowest_index, seeded_lot };

  static TieRule lowest_index() { return TieRule(Mode::lowest_index, 0); }
  static TieRule seeded_lot(std::uint64_t seed) { return TieRule(Mode::seeded_lot, seed); }

  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

  /// Chooses among `tied` (ascending entity indices). `draw` identifies the
  /// decision, so the same draw over the same candidates always picks the same one.
  std::size_t pick(std::span<const std::size_t> tied, std::uint64_t draw) const;

  friend bool operator==(const TieRule&, const TieRule&) = default;

 private:
  TieRule(Mode mode, std::uint64_t seed) : mode_(mode), seed_(seed) {}
  Mode mode_;
  std::uint64_t seed_;
};

/// Ordered seat awards. `order[k]` is the entity receiving award k, `tied[k]`
/// whether a tie had to be broken for it, `totals` the final count per entity
/// (including any starting counts).
struct AwardList {
  std::vector<std::size_t> order;
  std::vector<bool> tied;
  std::vector<int> totals;

  bool any_tie() const;
};

/// Highest-averages award sequence. `initial` optionally gives seats already
/// held; the sequence continues from there. Entities with zero votes never
/// win while someone else has votes.
AwardList award_sequence(std::span<const Votes> votes, int n_awards,
                         const DivisorSequence& divisors, const TieRule& tie,
                         std::span<const int> initial = {});

struct Apportionment {
  std::vector<int> seats;
  bool tie_broken = false;
};

Apportionment highest_averages_allocate(std::span<const Votes> votes, int house_size,
                                        const DivisorSequence& divisors,
                                        const TieRule& tie);

/// Largest remainders: floors of exact quotas, leftovers by remainder.
Apportionment hamilton_allocate(std::span<const Votes> weights, int house_size,
                                const TieRule& tie);

}  // namespace dynseat
