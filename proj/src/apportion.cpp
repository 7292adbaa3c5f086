#include "dynseat/apportion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace dynseat {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::int64_t parse_int(const std::string& text, const std::string& whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw RuleViolation("not a rational number: '" + whole + "'");
  }
  return value;
}

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw RuleViolation("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

}  // namespace

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw RuleViolation("empty rational");
  std::int64_t scale = 1;
  if (s.back() == '%') {
    s.pop_back();
    scale = 100;
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return reduced(parse_int(s.substr(0, slash), text),
                   parse_int(s.substr(slash + 1), text) * scale);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 12) throw RuleViolation("too many decimals: '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string digits = s.substr(0, dot) + frac;
    return reduced(parse_int(digits, text), den * scale);
  }
  return reduced(parse_int(s, text), scale);
}

DivisorSequence::DivisorSequence(Rational first) : first_(first) {
  if (first.den <= 0 || first.num <= 0) {
    throw RuleViolation("first divisor must be positive, got " + first.to_string());
  }
  first_ = reduced(first.num, first.den);
}

std::strong_ordering compare_quotients(const Quotient& a, const Quotient& b) {
  // a.v / (p1/q1) vs b.v / (p2/q2)  <=>  a.v * q1 * p2 vs b.v * q2 * p1
  const Wide lhs = Wide(a.votes) * a.divisor.den * b.divisor.num;
  const Wide rhs = Wide(b.votes) * b.divisor.den * a.divisor.num;
  return lhs <=> rhs;
}

std::size_t TieRule::pick(std::span<const std::size_t> tied, std::uint64_t draw) const {
  if (tied.empty()) throw Error("tie among zero candidates");
  if (mode_ == Mode::lowest_index || tied.size() == 1) return tied.front();
  const std::uint64_t h = splitmix64(seed_ ^ splitmix64(draw));
  return tied[h % tied.size()];
}

bool AwardList::any_tie() const {
  return std::find(tied.begin(), tied.end(), true) != tied.end();
}

AwardList award_sequence(std::span<const Votes> votes, int n_awards,
                         const DivisorSequence& divisors, const TieRule& tie,
                         std::span<const int> initial) {
  if (n_awards < 0) throw RuleViolation("negative number of awards");
  if (!initial.empty() && initial.size() != votes.size()) {
    throw RuleViolation("initial seat vector does not match vote vector");
  }
  for (Votes v : votes) {
    if (v < 0) throw RuleViolation("negative vote count");
  }

  AwardList out;
  out.totals.assign(votes.size(), 0);
  if (!initial.empty()) std::copy(initial.begin(), initial.end(), out.totals.begin());
  if (n_awards == 0) return out;
  if (std::all_of(votes.begin(), votes.end(), [](Votes v) { return v == 0; })) {
    throw AllZeroVotes("cannot award " + std::to_string(n_awards) +
                       " seat(s): every entity has zero votes");
  }

  out.order.reserve(n_awards);
  out.tied.reserve(n_awards);
  const std::uint64_t already =
      std::accumulate(out.totals.begin(), out.totals.end(), std::uint64_t{0});
  std::vector<std::size_t> best;
  best.reserve(votes.size());

  for (int k = 0; k < n_awards; ++k) {
    best.clear();
    Quotient top;
    for (std::size_t i = 0; i < votes.size(); ++i) {
      if (votes[i] == 0) continue;
      const Quotient q{votes[i], divisors.divisor(out.totals[i])};
      if (best.empty()) {
        best.push_back(i);
        top = q;
        continue;
      }
      const auto ord = compare_quotients(q, top);
      if (ord > 0) {
        best.clear();
        best.push_back(i);
        top = q;
      } else if (ord == 0) {
        best.push_back(i);
      }
    }
    const std::size_t winner = tie.pick(best, already + k);
    out.order.push_back(winner);
    out.tied.push_back(best.size() > 1);
    ++out.totals[winner];
  }
  return out;
}

Apportionment highest_averages_allocate(std::span<const Votes> votes, int house_size,
                                        const DivisorSequence& divisors,
                                        const TieRule& tie) {
  AwardList list = award_sequence(votes, house_size, divisors, tie);
  return Apportionment{std::move(list.totals), list.any_tie()};
}

Apportionment hamilton_allocate(std::span<const Votes> weights, int house_size,
                                const TieRule& tie) {
  if (house_size < 0) throw RuleViolation("negative house size");
  Wide total = 0;
  for (Votes w : weights) {
    if (w < 0) throw RuleViolation("negative weight");
    total += w;
  }
  Apportionment out;
  out.seats.assign(weights.size(), 0);
  if (house_size == 0) return out;
  if (total == 0) {
    throw AllZeroVotes("cannot apportion " + std::to_string(house_size) +
                       " seat(s): all weights are zero");
  }

  // quota_i = house * w_i / W; remainders share the denominator W.
  std::vector<Wide> remainder(weights.size());
  int given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Wide scaled = Wide(house_size) * weights[i];
    out.seats[i] = static_cast<int>(scaled / total);
    remainder[i] = scaled % total;
    given += out.seats[i];
  }

  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });

  int left = house_size - given;
  std::size_t pos = 0;
  while (left > 0) {
    // Group of equal remainders starting at pos.
    std::size_t end = pos;
    while (end < order.size() && remainder[order[end]] == remainder[order[pos]]) ++end;
    const std::size_t group = end - pos;
    if (static_cast<std::size_t>(left) >= group) {
      for (std::size_t k = pos; k < end; ++k) ++out.seats[order[k]];
      left -= static_cast<int>(group);
      pos = end;
      continue;
    }
    // Not enough seats for the whole group: draw them one at a time.
    out.tie_broken = true;
    std::vector<std::size_t> pool(order.begin() + pos, order.begin() + end);
    std::sort(pool.begin(), pool.end());
    std::uint64_t draw = 0;
    while (left > 0) {
      const std::size_t chosen = tie.pick(pool, draw++);
      ++out.seats[chosen];
      pool.erase(std::find(pool.begin(), pool.end(), chosen));
      --left;
    }
  }
  return out;
}

}  // namespace dynseat
