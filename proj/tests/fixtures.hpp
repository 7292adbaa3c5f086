#pragma once

#include <array>
#include <string>

#include "dynseat/io.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(DYNSEAT_DATA_DIR) + "/" + name; }
inline std::string rules_path(const std::string& name) { return data("rules/" + name + ".json"); }

inline dynseat::ElectionInput election(const std::string& name) {
  return dynseat::read_election_file(data(name + ".csv"));
}
inline dynseat::RulesDocument rules(const std::string& name) {
  return dynseat::read_rules_file(rules_path(name));
}

struct Table1Row {
  std::array<int, 8> permanent;
  std::array<int, 8> adjustment;
};

// Permanent and adjustment seats per cell of the printed 2010 table, rows in
// file order, parties M C FP KD S V MP SD.
inline constexpr std::array<Table1Row, 29> kTable1{{
    {{10, 2, 2, 2, 6, 2, 3, 1}, {0, 0, 1, 0, 0, 0, 0, 0}},
    {{15, 2, 3, 2, 8, 2, 3, 2}, {0, 0, 0, 1, 0, 0, 0, 0}},
    {{4, 1, 1, 1, 3, 0, 1, 0}, {0, 0, 0, 0, 0, 1, 0, 1}},
    {{3, 0, 0, 0, 4, 0, 1, 1}, {0, 1, 1, 0, 0, 0, 0, 0}},
    {{4, 1, 1, 1, 5, 0, 1, 1}, {0, 0, 0, 0, 0, 1, 0, 0}},
    {{3, 1, 0, 2, 4, 0, 0, 1}, {0, 0, 1, 0, 0, 0, 1, 0}},
    {{2, 1, 0, 0, 3, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
    {{3, 1, 0, 0, 4, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0, 0}},
    {{1, 0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
    {{2, 0, 0, 0, 3, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1}},
    {{3, 0, 1, 0, 3, 0, 1, 1}, {0, 0, 0, 0, 0, 1, 0, 0}},
    {{4, 0, 1, 0, 3, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 1, 0}},
    {{5, 1, 1, 0, 3, 0, 1, 1}, {0, 0, 0, 1, 0, 0, 0, 0}},
    {{4, 1, 1, 0, 3, 0, 0, 1}, {0, 0, 0, 1, 0, 0, 1, 0}},
    {{4, 1, 1, 0, 3, 0, 1, 0}, {0, 0, 0, 1, 0, 0, 0, 1}},
    {{5, 0, 1, 1, 5, 2, 2, 1}, {0, 1, 0, 0, 0, 0, 0, 0}},
    {{4, 1, 1, 1, 3, 0, 1, 1}, {0, 0, 0, 0, 0, 1, 0, 0}},
    {{3, 1, 1, 0, 3, 0, 1, 0}, {0, 0, 0, 1, 0, 1, 0, 1}},
    {{3, 0, 0, 0, 3, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
    {{3, 1, 0, 1, 4, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0}},
    {{3, 1, 0, 0, 5, 0, 0, 0}, {0, 0, 1, 0, 0, 1, 1, 0}},
    {{3, 0, 1, 0, 4, 0, 1, 0}, {0, 0, 0, 1, 0, 1, 0, 1}},
    {{3, 0, 1, 0, 4, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 1, 1}},
    {{3, 1, 0, 0, 4, 0, 1, 1}, {0, 0, 0, 0, 0, 1, 0, 0}},
    {{3, 1, 0, 0, 4, 1, 0, 1}, {0, 0, 1, 0, 0, 0, 1, 0}},
    {{2, 1, 0, 0, 5, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0}},
    {{1, 1, 0, 0, 2, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
    {{2, 1, 0, 0, 4, 1, 1, 0}, {0, 0, 1, 1, 0, 0, 0, 0}},
    {{2, 0, 0, 0, 6, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
}};

inline constexpr std::array<int, 8> kTable1Totals{107, 23, 24, 19, 112, 19, 25, 20};
inline constexpr std::array<int, 8> kProportional2010{106, 23, 25, 20, 109, 20, 26, 20};

inline bool matches_table1(const dynseat::SeatOutcome& o) {
  for (std::size_t i = 0; i < kTable1.size(); ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      if (o.permanent(i, j) != kTable1[i].permanent[j]) return false;
      if (o.adjustment(i, j) != kTable1[i].adjustment[j]) return false;
    }
  }
  return true;
}

}  // namespace fixtures
