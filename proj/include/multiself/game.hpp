#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

// Finite normal-form games with ordinal payoffs.
//
// Payoffs are preference ranks, not utilities: only order comparisons are
// meaningful, and nothing in this library ever adds or averages them.

namespace multiself {

struct Action {
  std::string label;
  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

struct PlayerId {
  std::size_t index = 0;
  std::string display_name;
};

// A preference level on a 1..scale_max ladder, higher preferred.
struct OrdinalRank {
  int value = 1;
  int scale_max = 4;

  bool in_bounds() const { return value >= 1 && value <= scale_max; }

  // Comparisons are by preference level only.
  friend bool operator==(const OrdinalRank& a, const OrdinalRank& b) {
    return a.value == b.value;
  }
  friend std::strong_ordering operator<=>(const OrdinalRank& a,
                                          const OrdinalRank& b) {
    return a.value <=> b.value;
  }
};

// One action index per player, in player-index order. The coordinate of the
// payoff tensor.
struct Profile {
  std::vector<std::size_t> actions;

  std::size_t size() const { return actions.size(); }
  std::size_t& operator[](std::size_t i) { return actions[i]; }
  std::size_t operator[](std::size_t i) const { return actions[i]; }

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

struct ValidationFinding {
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;
  bool ok() const { return findings.empty(); }
};

// Immutable after construction; payoffs live in a dense tensor indexed by the
// lexicographic linear index of the profile. A payoff row may be left empty
// to represent a missing entry; validate() reports it.
class Game {
 public:
  Game() = default;
  Game(std::vector<PlayerId> players,
       std::vector<std::vector<Action>> action_sets, int scale_max,
       std::vector<std::vector<OrdinalRank>> payoffs)
      : players_(std::move(players)),
        action_sets_(std::move(action_sets)),
        scale_max_(scale_max),
        payoffs_(std::move(payoffs)) {
    if (players_.size() != action_sets_.size())
      throw std::invalid_argument("one action set per player required");
    payoffs_.resize(profile_count());
  }

  std::size_t player_count() const { return players_.size(); }
  const std::vector<PlayerId>& players() const { return players_; }
  const std::vector<Action>& actions_of(std::size_t player) const {
    if (player >= players_.size())
      throw std::invalid_argument("unknown player index");
    return action_sets_[player];
  }
  int scale_max() const { return scale_max_; }

  std::size_t profile_count() const {
    std::size_t n = 1;
    for (const auto& set : action_sets_) n *= set.size();
    return n;
  }

  // Lexicographic linear index: earlier players vary slowest.
  std::size_t linear_index(const Profile& profile) const {
    require_valid(profile);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < profile.size(); ++i)
      idx = idx * action_sets_[i].size() + profile[i];
    return idx;
  }

  Profile profile_at(std::size_t linear) const {
    Profile p;
    p.actions.resize(players_.size());
    for (std::size_t i = players_.size(); i-- > 0;) {
      const std::size_t n = action_sets_[i].size();
      p[i] = linear % n;
      linear /= n;
    }
    return p;
  }

  bool has_payoff(const Profile& profile) const {
    return !payoffs_[linear_index(profile)].empty();
  }

  const std::vector<OrdinalRank>& rank_vector(const Profile& profile) const {
    const auto& row = payoffs_[linear_index(profile)];
    if (row.size() != players_.size())
      throw std::invalid_argument("no payoff stored for profile " +
                                  describe(profile));
    return row;
  }

  const std::vector<OrdinalRank>& stored_row(std::size_t linear) const {
    return payoffs_.at(linear);
  }

  std::string describe(const Profile& profile) const {
    require_valid(profile);
    std::string out = "(";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i) out += ",";
      out += players_[i].display_name + "=" +
             action_sets_[i][profile[i]].label;
    }
    return out + ")";
  }

  std::size_t action_index(std::size_t player, const std::string& label) const {
    const auto& set = actions_of(player);
    for (std::size_t a = 0; a < set.size(); ++a)
      if (set[a].label == label) return a;
    throw std::invalid_argument("player " + players_[player].display_name +
                                " has no action '" + label + "'");
  }

  std::size_t player_index(const std::string& display_name) const {
    for (const auto& p : players_)
      if (p.display_name == display_name) return p.index;
    throw std::invalid_argument("no player named '" + display_name + "'");
  }

 private:
  void require_valid(const Profile& profile) const {
    if (profile.size() != players_.size())
      throw std::invalid_argument("profile length does not match player count");
    for (std::size_t i = 0; i < profile.size(); ++i)
      if (profile[i] >= action_sets_[i].size())
        throw std::invalid_argument("profile action index out of range");
  }

  std::vector<PlayerId> players_;
  std::vector<std::vector<Action>> action_sets_;
  int scale_max_ = 4;
  std::vector<std::vector<OrdinalRank>> payoffs_;
};

// Every profile exactly once, lexicographic over player action indices.
// A game with no players yields the single empty profile.
inline std::vector<Profile> enumerate_profiles(const Game& game) {
  std::vector<Profile> out;
  out.reserve(game.profile_count());
  for (std::size_t i = 0; i < game.profile_count(); ++i)
    out.push_back(game.profile_at(i));
  return out;
}

inline OrdinalRank payoff_of(const Game& game, const Profile& profile,
                             std::size_t player) {
  if (player >= game.player_count())
    throw std::invalid_argument("unknown player index");
  return game.rank_vector(profile)[player];
}

inline OrdinalRank payoff_of(const Game& game, const Profile& profile,
                             const PlayerId& player) {
  return payoff_of(game, profile, player.index);
}

// All profiles differing from `profile` at exactly the given player.
inline std::vector<Profile> unilateral_deviations(const Game& game,
                                                  const Profile& profile,
                                                  std::size_t player) {
  const auto& set = game.actions_of(player);
  std::vector<Profile> out;
  out.reserve(set.size() - 1);
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (a == profile[player]) continue;
    Profile d = profile;
    d[player] = a;
    out.push_back(std::move(d));
  }
  return out;
}

inline ValidationReport validate(const Game& game) {
  ValidationReport report;
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const auto& set = game.actions_of(i);
    const auto& name = game.players()[i].display_name;
    if (set.empty())
      report.findings.push_back({"player " + name + " has an empty action set"});
    for (std::size_t a = 0; a < set.size(); ++a) {
      if (set[a].label.empty())
        report.findings.push_back({"player " + name + " has an empty action label"});
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (set[a].label == set[b].label)
          report.findings.push_back(
              {"player " + name + " has duplicate action label '" +
               set[a].label + "'"});
    }
  }
  for (std::size_t idx = 0; idx < game.profile_count(); ++idx) {
    const Profile p = game.profile_at(idx);
    const auto& row = game.stored_row(idx);
    if (row.empty()) {
      report.findings.push_back({"missing payoff for profile " + game.describe(p)});
      continue;
    }
    if (row.size() != game.player_count()) {
      report.findings.push_back(
          {"payoff for profile " + game.describe(p) + " has " +
           std::to_string(row.size()) + " ranks, expected " +
           std::to_string(game.player_count())});
      continue;
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].value < 1 || row[i].value > game.scale_max())
        report.findings.push_back(
            {"rank " + std::to_string(row[i].value) + " for player " +
             game.players()[i].display_name + " at profile " +
             game.describe(p) + " is outside [1, " +
             std::to_string(game.scale_max()) + "]"});
    }
  }
  return report;
}

}  // namespace multiself
