#pragma once

// Golden fixture for the four-player multiple-self Prisoners' Dilemma:
// 16 profiles in lexicographic (Pm, Pa, Qm, Qa) order with C before D,
// the four ranks per profile, and the per-player best-response marks
// transcribed from the published payoff table.

#include <array>
#include <string>

namespace table1 {

struct Row {
  const char* profile;          // e.g. "CDCD"
  std::array<int, 4> ranks;     // Pm, Pa, Qm, Qa
  std::array<bool, 4> marks;    // best-response flag per player
  bool nash;
};

inline constexpr std::array<Row, 16> kRows{{
    {"CCCC", {3, 3, 3, 3}, {false, true, false, true}, false},
    {"CCCD", {1, 1, 4, 3}, {false, true, true, true}, false},
    {"CCDC", {1, 1, 4, 4}, {false, true, true, true}, false},
    {"CCDD", {1, 1, 4, 3}, {false, true, true, false}, false},
    {"CDCC", {4, 3, 1, 1}, {true, true, false, true}, false},
    {"CDCD", {2, 1, 2, 1}, {true, true, true, true}, true},
    {"CDDC", {2, 1, 2, 2}, {true, true, true, true}, true},
    {"CDDD", {2, 1, 2, 1}, {true, true, true, false}, false},
    {"DCCC", {4, 4, 1, 1}, {true, true, false, true}, false},
    {"DCCD", {2, 2, 2, 1}, {true, true, true, true}, true},
    {"DCDC", {2, 2, 2, 2}, {true, true, true, true}, true},
    {"DCDD", {2, 2, 2, 1}, {true, true, true, false}, false},
    {"DDCC", {4, 3, 1, 1}, {true, false, false, true}, false},
    {"DDCD", {2, 1, 2, 1}, {true, false, true, true}, false},
    {"DDDC", {2, 1, 2, 2}, {true, false, true, true}, false},
    {"DDDD", {2, 1, 2, 1}, {true, false, true, false}, false},
}};

// Lexicographic index of a "CDCD"-style profile string (C=0, D=1).
inline std::size_t index_of(const std::string& profile) {
  std::size_t idx = 0;
  for (char c : profile) idx = idx * 2 + (c == 'D' ? 1 : 0);
  return idx;
}

}  // namespace table1
