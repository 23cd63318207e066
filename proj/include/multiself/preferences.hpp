#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "multiself/game.hpp"

// Preference generators for the two trait kinds: mercenary (cares only about
// the person-level outcome) and altruistic (same ordering, but guilt lowers
// the rank whenever the altruistic trait itself defects).

namespace multiself {

inline constexpr int kTraitScaleMax = 4;

inline bool is_cooperate(const Action& a) {
  if (a.label == "C") return true;
  if (a.label == "D") return false;
  throw std::invalid_argument("action '" + a.label +
                              "' is not in the {C, D} alphabet");
}

// Classic PD ordering over the two person-level actions:
//   (C,D) -> 1, (D,D) -> 2, (C,C) -> 3, (D,C) -> 4.
inline OrdinalRank mercenary_rank(const Action& person_action,
                                  const Action& other_action) {
  const bool own_c = is_cooperate(person_action);
  const bool other_c = is_cooperate(other_action);
  int value;
  if (own_c)
    value = other_c ? 3 : 1;
  else
    value = other_c ? 4 : 2;
  return {value, kTraitScaleMax};
}

// Mercenary ordering, lowered by `guilt` when this trait itself defected,
// clamped to stay on the scale.
inline OrdinalRank altruistic_rank(const Action& own_action,
                                   const Action& person_action,
                                   const Action& other_action, int guilt) {
  if (guilt < 0) throw std::invalid_argument("guilt penalty must be >= 0");
  int value = mercenary_rank(person_action, other_action).value;
  if (!is_cooperate(own_action)) value = std::max(1, value - guilt);
  return {value, kTraitScaleMax};
}

enum class TraitKind { mercenary, altruistic, custom };

// A custom generator sees this trait's own internal action, its person's
// aggregated action, and the aggregated actions of every other person.
using CustomRankFn = std::function<OrdinalRank(
    const Action& own, const Action& person, std::span<const Action> others)>;

struct PreferenceGenerator {
  TraitKind kind = TraitKind::mercenary;
  int guilt_penalty = 0;  // altruistic only
  CustomRankFn custom;    // kind == custom only

  // The built-in generators are defined against exactly one opponent person.
  OrdinalRank rank(const Action& own, const Action& person,
                   std::span<const Action> others) const {
    switch (kind) {
      case TraitKind::mercenary:
        require_single_opponent(others);
        return mercenary_rank(person, others[0]);
      case TraitKind::altruistic:
        require_single_opponent(others);
        return altruistic_rank(own, person, others[0], guilt_penalty);
      case TraitKind::custom:
        if (!custom) throw std::invalid_argument("custom generator unset");
        return custom(own, person, others);
    }
    throw std::logic_error("unreachable");
  }

 private:
  static void require_single_opponent(std::span<const Action> others) {
    if (others.size() != 1)
      throw std::invalid_argument(
          "built-in generators are defined for exactly 2 persons; supply a "
          "custom generator for other configurations");
  }
};

inline PreferenceGenerator make_mercenary() {
  return {TraitKind::mercenary, 0, nullptr};
}

inline PreferenceGenerator make_altruistic(int guilt = 1) {
  return {TraitKind::altruistic, guilt, nullptr};
}

}  // namespace multiself
