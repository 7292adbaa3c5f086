#include "dynseat/metrics.hpp"

namespace dynseat {

namespace {

using boost::multiprecision::cpp_int;

void check_pair(const ShareVector& votes, const ShareVector& seats) {
  if (votes.weights.size() != seats.weights.size() || votes.labels != seats.labels) {
    throw MismatchedEntities("vote and seat vectors describe different entities");
  }
  if (votes.labels.size() != votes.weights.size()) {
    throw MismatchedEntities("label count does not match weight count");
  }
  for (const ShareVector* sv : {&votes, &seats}) {
    for (Votes w : sv->weights) {
      if (w < 0) throw MismatchedEntities("negative weight in share vector");
    }
    if (sv->total() <= 0) throw ZeroBasis("share vector has zero total");
  }
}

std::vector<Exact> lh_terms(const ShareVector& votes, const ShareVector& seats) {
  check_pair(votes, seats);
  const cpp_int V = votes.total();
  const cpp_int S = seats.total();
  std::vector<Exact> terms;
  terms.reserve(votes.weights.size());
  for (std::size_t i = 0; i < votes.weights.size(); ++i) {
    cpp_int gap = cpp_int(votes.weights[i]) * S - cpp_int(seats.weights[i]) * V;
    if (gap < 0) gap = -gap;
    terms.emplace_back(Exact(cpp_int(50) * gap, V * S));
  }
  return terms;
}

std::vector<Exact> sl_terms(const ShareVector& votes, const ShareVector& seats) {
  check_pair(votes, seats);
  const cpp_int V = votes.total();
  const cpp_int S = seats.total();
  std::vector<Exact> terms;
  terms.reserve(votes.weights.size());
  for (std::size_t i = 0; i < votes.weights.size(); ++i) {
    const Votes v = votes.weights[i];
    const Votes s = seats.weights[i];
    if (v == 0) {
      if (s != 0) {
        throw SingularTerm("entity '" + votes.labels[i] + "' has seats but no votes");
      }
      terms.emplace_back(0);
      continue;
    }
    // (V/v) * ((vS - sV) / (VS))^2 = (vS - sV)^2 / (v V S^2)
    const cpp_int gap = cpp_int(v) * S - cpp_int(s) * V;
    terms.emplace_back(Exact(cpp_int(100) * gap * gap, cpp_int(v) * V * S * S));
  }
  return terms;
}

Exact sum(const std::vector<Exact>& terms) {
  Exact total = 0;
  for (const Exact& t : terms) total += t;
  return total;
}

}  // namespace

Votes ShareVector::total() const {
  Votes t = 0;
  for (Votes w : weights) t += w;
  return t;
}

Exact lh_measure(const ShareVector& votes, const ShareVector& seats) {
  return sum(lh_terms(votes, seats));
}

Exact sl_measure(const ShareVector& votes, const ShareVector& seats) {
  return sum(sl_terms(votes, seats));
}

std::string render_decimal(const Exact& value, int digits) {
  cpp_int scale = 1;
  for (int d = 0; d < digits; ++d) scale *= 10;
  const bool negative = value < 0;
  const Exact magnitude = negative ? Exact(-value) : value;
  const Exact scaled = magnitude * scale;
  const cpp_int num = boost::multiprecision::numerator(scaled);
  const cpp_int den = boost::multiprecision::denominator(scaled);
  const cpp_int rounded = (2 * num + den) / (2 * den);

  std::string body = rounded.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, digits + 1 - body.size(), '0');
    }
    body.insert(body.size() - digits, ".");
  }
  return (negative && rounded != 0 ? "-" : "") + body;
}

double to_double(const Exact& value) { return value.convert_to<double>(); }

const char* to_string(Category c) {
  switch (c) {
    case Category::party: return "party";
    case Category::constituency: return "constituency";
    case Category::pair: return "pair";
  }
  return "?";
}

const char* to_string(ConstituencyBasis b) {
  return b == ConstituencyBasis::cast_votes ? "cast-votes" : "entitled";
}

DisproportionalityReport report(const ElectionInput& input, const SeatOutcome& outcome,
                                Category category, ConstituencyBasis basis) {
  if (outcome.permanent.rows() != input.n_constituencies() ||
      outcome.permanent.cols() != input.n_parties()) {
    throw MismatchedEntities("seat outcome does not match the election input");
  }
  const Grid<int> seats = outcome.seats();
  const std::vector<int> party_seats = seats.column_sums();

  ShareVector votes;
  ShareVector held;
  switch (category) {
    case Category::party: {
      const std::vector<Votes> totals = input.party_totals();
      for (std::size_t j = 0; j < input.n_parties(); ++j) {
        if (party_seats[j] == 0) continue;
        votes.labels.push_back(input.parties[j]);
        votes.weights.push_back(totals[j]);
        held.weights.push_back(party_seats[j]);
      }
      break;
    }
    case Category::constituency: {
      const std::vector<Votes> base =
          basis == ConstituencyBasis::entitled ? input.entitled : input.votes.row_sums();
      const std::vector<int> row_seats = seats.row_sums();
      votes.labels = input.constituencies;
      votes.weights = base;
      held.weights.assign(row_seats.begin(), row_seats.end());
      break;
    }
    case Category::pair: {
      for (std::size_t i = 0; i < input.n_constituencies(); ++i) {
        for (std::size_t j = 0; j < input.n_parties(); ++j) {
          if (party_seats[j] == 0) continue;
          votes.labels.push_back(input.constituencies[i] + "/" + input.parties[j]);
          votes.weights.push_back(input.votes(i, j));
          held.weights.push_back(seats(i, j));
        }
      }
      break;
    }
  }
  held.labels = votes.labels;

  DisproportionalityReport out;
  out.category = category;
  out.basis = basis;
  out.labels = votes.labels;
  out.lh_contributions = lh_terms(votes, held);
  out.sl_contributions = sl_terms(votes, held);
  out.lh = sum(out.lh_contributions);
  out.sl = sum(out.sl_contributions);
  return out;
}

}  // namespace dynseat
