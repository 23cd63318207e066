#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "multiself/composite.hpp"
#include "multiself/game.hpp"

// Best-response sets, pure Nash enumeration, and the internal-conflict
// ("two minds") report. Nash uses weak best responses: a profile survives if
// no player has a strictly rank-improving unilateral deviation, so ties are
// kept.

namespace multiself {

// A player's best responses to one fixed context of the other players.
struct BestResponseMark {
  std::size_t player = 0;
  Profile context;                     // the player's own slot is ignored
  std::vector<std::size_t> responses;  // action indices, ascending
};

struct EquilibriumReport {
  std::vector<Profile> equilibria;  // lexicographic order
  // conflicts[e][p]: person p's trait-players disagree at equilibrium e.
  // Filled by internal_conflict; empty until then.
  std::vector<std::vector<bool>> conflicts;
};

// All actions attaining the maximal rank for `player` given the other
// players' actions in `context` (the player's own entry is ignored).
inline std::vector<std::size_t> best_responses(const Game& game,
                                               std::size_t player,
                                               const Profile& context) {
  if (player >= game.player_count())
    throw std::invalid_argument("unknown player index");
  if (context.size() != game.player_count())
    throw std::invalid_argument("context length does not match player count");
  const auto& set = game.actions_of(player);
  Profile probe = context;
  std::vector<std::size_t> best;
  OrdinalRank best_rank{0, game.scale_max()};
  for (std::size_t a = 0; a < set.size(); ++a) {
    probe[player] = a;
    const OrdinalRank r = payoff_of(game, probe, player);
    if (best.empty() || r > best_rank) {
      best_rank = r;
      best.assign(1, a);
    } else if (r == best_rank) {
      best.push_back(a);
    }
  }
  return best;
}

// One mark per (player, context) pair, contexts in lexicographic order of the
// other players' actions.
inline std::vector<BestResponseMark> all_best_responses(const Game& game) {
  std::vector<BestResponseMark> marks;
  for (std::size_t player = 0; player < game.player_count(); ++player) {
    std::vector<Profile> seen;
    for (std::size_t idx = 0; idx < game.profile_count(); ++idx) {
      Profile context = game.profile_at(idx);
      context[player] = 0;  // canonicalize the ignored slot
      if (std::find(seen.begin(), seen.end(), context) != seen.end()) continue;
      seen.push_back(context);
      marks.push_back({player, context, best_responses(game, player, context)});
    }
  }
  return marks;
}

inline bool is_pure_nash(const Game& game, const Profile& profile) {
  for (std::size_t player = 0; player < game.player_count(); ++player) {
    const auto best = best_responses(game, player, profile);
    if (std::find(best.begin(), best.end(), profile[player]) == best.end())
      return false;
  }
  return true;
}

inline EquilibriumReport pure_nash(const Game& game) {
  EquilibriumReport report;
  for (std::size_t idx = 0; idx < game.profile_count(); ++idx) {
    Profile p = game.profile_at(idx);
    if (is_pure_nash(game, p)) report.equilibria.push_back(std::move(p));
  }
  return report;
}

// Per-person conflict flags for one profile of the composite game.
inline std::vector<bool> person_conflicts(const CompositeSpec& spec,
                                          const Profile& profile) {
  if (profile.size() != spec.trait_player_count())
    throw std::invalid_argument(
        "profile length does not match the spec's trait-players");
  std::vector<bool> flags;
  flags.reserve(spec.persons.size());
  std::size_t offset = 0;
  for (const auto& person : spec.persons) {
    bool conflicted = false;
    for (std::size_t t = 1; t < person.traits.size(); ++t)
      if (profile[offset + t] != profile[offset]) conflicted = true;
    flags.push_back(conflicted);
    offset += person.traits.size();
  }
  return flags;
}

// Fills the report's conflict flags: a person is "in two minds" at an
// equilibrium iff its trait-players' actions are not all equal.
inline EquilibriumReport internal_conflict(EquilibriumReport report,
                                           const CompositeSpec& spec) {
  report.conflicts.clear();
  report.conflicts.reserve(report.equilibria.size());
  for (const auto& eq : report.equilibria)
    report.conflicts.push_back(person_conflicts(spec, eq));
  return report;
}

}  // namespace multiself
