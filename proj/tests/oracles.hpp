#pragma once

// Test-only oracles, kept independent of the library's solver paths:
//  - a definitional pure-Nash filter built on unilateral_deviations,
//  - a subgame-perfect outcome oracle that explicitly enumerates every
//    tie-resolution combination instead of the solver's threshold rule,
//  - a uniform random-game generator for property checks.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "multiself/extensive.hpp"
#include "multiself/game.hpp"

namespace oracles {

using multiself::Game;
using multiself::MoveOrder;
using multiself::Profile;

// Keep profile p iff no player improves strictly by any unilateral deviation.
inline std::vector<Profile> definitional_nash(const Game& game) {
  std::vector<Profile> out;
  for (std::size_t idx = 0; idx < game.profile_count(); ++idx) {
    const Profile p = game.profile_at(idx);
    bool stable = true;
    for (std::size_t i = 0; i < game.player_count() && stable; ++i)
      for (const Profile& d : multiself::unilateral_deviations(game, p, i))
        if (multiself::payoff_of(game, d, i) > multiself::payoff_of(game, p, i)) {
          stable = false;
          break;
        }
    if (stable) out.push_back(p);
  }
  return out;
}

namespace detail {

// Outcomes reachable under some subgame-perfect strategy of the subtree at
// `depth` with moves `hist` already fixed. For each combination of one
// continuation outcome per action, the mover picks every argmax.
inline std::set<Profile> spe_search(const Game& game, const MoveOrder& order,
                                    std::size_t depth, Profile& hist) {
  if (depth == order.players.size()) return {hist};
  const std::size_t mover = order.players[depth];
  const std::size_t n_actions = game.actions_of(mover).size();
  std::vector<std::vector<Profile>> child;
  for (std::size_t a = 0; a < n_actions; ++a) {
    hist[mover] = a;
    const auto s = spe_search(game, order, depth + 1, hist);
    child.emplace_back(s.begin(), s.end());
  }
  std::set<Profile> out;
  std::vector<std::size_t> pick(n_actions, 0);
  while (true) {
    int best = 0;
    for (std::size_t a = 0; a < n_actions; ++a)
      best = std::max(best,
                      multiself::payoff_of(game, child[a][pick[a]], mover).value);
    for (std::size_t a = 0; a < n_actions; ++a)
      if (multiself::payoff_of(game, child[a][pick[a]], mover).value == best)
        out.insert(child[a][pick[a]]);
    std::size_t a = 0;
    while (a < n_actions && ++pick[a] == child[a].size()) pick[a++] = 0;
    if (a == n_actions) break;
  }
  return out;
}

}  // namespace detail

inline std::vector<Profile> spe_outcomes(const Game& game,
                                         const MoveOrder& order) {
  Profile hist;
  hist.actions.assign(game.player_count(), 0);
  const auto s = detail::spe_search(game, order, 0, hist);
  return {s.begin(), s.end()};
}

inline Game random_game(std::mt19937& rng, std::size_t max_players = 4,
                        std::size_t max_actions = 3, int scale_max = 4) {
  std::uniform_int_distribution<std::size_t> players_dist(2, max_players);
  std::uniform_int_distribution<std::size_t> actions_dist(2, max_actions);
  std::uniform_int_distribution<int> rank_dist(1, scale_max);
  const std::size_t n = players_dist(rng);
  std::vector<multiself::PlayerId> players;
  std::vector<std::vector<multiself::Action>> action_sets;
  for (std::size_t i = 0; i < n; ++i) {
    players.push_back({i, "p" + std::to_string(i)});
    std::vector<multiself::Action> set;
    const std::size_t k = actions_dist(rng);
    for (std::size_t a = 0; a < k; ++a)
      set.push_back({std::string(1, static_cast<char>('a' + a))});
    action_sets.push_back(std::move(set));
  }
  std::size_t total = 1;
  for (const auto& s : action_sets) total *= s.size();
  std::vector<std::vector<multiself::OrdinalRank>> payoffs(total);
  for (auto& row : payoffs)
    for (std::size_t i = 0; i < n; ++i)
      row.push_back({rank_dist(rng), scale_max});
  return Game(std::move(players), std::move(action_sets), scale_max,
              std::move(payoffs));
}

}  // namespace oracles
