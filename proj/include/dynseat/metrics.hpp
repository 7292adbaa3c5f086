#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynseat/systems.hpp"

namespace dynseat {

using Exact = boost::multiprecision::cpp_rational;

class MismatchedEntities : public Error {
 public:
  using Error::Error;
};

class ZeroBasis : public Error {
 public:
  using Error::Error;
};

/// An entity with no votes but a positive seat share: its SL term is unbounded.
class SingularTerm : public Error {
 public:
  using Error::Error;
};

struct ShareVector {
  std::vector<std::string> labels;
  std::vector<Votes> weights;

  Votes total() const;
};

/// 50 * sum |v_i/V - s_i/S|, exact.
Exact lh_measure(const ShareVector& votes, const ShareVector& seats);

/// 100 * sum (V/v_i) * (v_i/V - s_i/S)^2, exact. Entities with neither votes
/// nor seats contribute nothing.
Exact sl_measure(const ShareVector& votes, const ShareVector& seats);

/// Fixed-point rendering, rounding half away from zero.
std::string render_decimal(const Exact& value, int digits);

double to_double(const Exact& value);

enum class Category { party, constituency, pair };
enum class ConstituencyBasis { cast_votes, entitled };

const char* to_string(Category c);
const char* to_string(ConstituencyBasis b);

struct DisproportionalityReport {
  Category category = Category::party;
  ConstituencyBasis basis = ConstituencyBasis::entitled;
  std::vector<std::string> labels;
  Exact lh;
  Exact sl;
  std::vector<Exact> lh_contributions;
  std::vector<Exact> sl_contributions;
};

/// Party and pair categories only count parties that won seats, both for V and
/// for the entity list. The constituency category compares row seat totals
/// with either all cast votes in the row or the entitled voters.
DisproportionalityReport report(const ElectionInput& input, const SeatOutcome& outcome,
                                Category category,
                                ConstituencyBasis basis = ConstituencyBasis::entitled);

}  // namespace dynseat
