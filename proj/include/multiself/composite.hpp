#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiself/game.hpp"
#include "multiself/preferences.hpp"

// Expansion of persons into internal trait-players. Each person's traits are
// independent players; the person's realized action is an aggregation of the
// internal choices (weakest link: any internal defection makes the person
// defect). build_composite_game materializes the full normal-form game over
// all trait-players.

namespace multiself {

struct TraitPlayer {
  std::string name;
  PreferenceGenerator generator;
};

enum class AggregationKind { weakest_link };

struct AggregationRule {
  AggregationKind kind = AggregationKind::weakest_link;
};

struct Person {
  std::string name;
  std::vector<TraitPlayer> traits;
  AggregationRule aggregation;
};

struct CompositeSpec {
  std::vector<Person> persons;
  std::vector<Action> alphabet = {{"C"}, {"D"}};
  int scale_max = 4;

  std::size_t trait_player_count() const {
    std::size_t n = 0;
    for (const auto& p : persons) n += p.traits.size();
    return n;
  }
};

inline Action aggregate_action(const AggregationRule& rule,
                               std::span<const Action> internal_actions) {
  if (internal_actions.empty())
    throw std::invalid_argument("cannot aggregate an empty action vector");
  switch (rule.kind) {
    case AggregationKind::weakest_link:
      for (const auto& a : internal_actions)
        if (!is_cooperate(a)) return {"D"};
      return {"C"};
  }
  throw std::logic_error("unreachable");
}

// The profile is indexed over all trait-players, person-major in declaration
// order; returns one aggregated action per person.
inline std::vector<Action> person_actions(const CompositeSpec& spec,
                                          const Profile& internal_profile) {
  if (internal_profile.size() != spec.trait_player_count())
    throw std::invalid_argument(
        "profile length does not match the number of trait-players");
  std::vector<Action> out;
  out.reserve(spec.persons.size());
  std::size_t offset = 0;
  for (const auto& person : spec.persons) {
    std::vector<Action> internal;
    internal.reserve(person.traits.size());
    for (std::size_t t = 0; t < person.traits.size(); ++t)
      internal.push_back(spec.alphabet.at(internal_profile[offset + t]));
    out.push_back(aggregate_action(person.aggregation, internal));
    offset += person.traits.size();
  }
  return out;
}

namespace detail {

// Display names are person name + trait initial (P + mercenary -> "Pm");
// falls back to "P:mercenary" when initials collide.
inline std::vector<std::string> trait_display_names(const CompositeSpec& spec) {
  std::vector<std::string> names;
  for (const auto& person : spec.persons)
    for (const auto& trait : person.traits)
      names.push_back(person.name + (trait.name.empty() ? "" : trait.name.substr(0, 1)));
  bool unique = true;
  for (std::size_t i = 0; i < names.size() && unique; ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) { unique = false; break; }
  if (unique) return names;
  names.clear();
  for (const auto& person : spec.persons)
    for (const auto& trait : person.traits)
      names.push_back(person.name + ":" + trait.name);
  return names;
}

}  // namespace detail

// Players are all trait-players, person-major in declaration order. Each
// trait-player's rank at an internal profile is its generator applied to
// (its own internal action, its person's aggregated action, the other
// persons' aggregated actions).
inline Game build_composite_game(const CompositeSpec& spec) {
  if (spec.persons.empty())
    throw std::invalid_argument("composite spec needs at least one person");
  for (const auto& person : spec.persons) {
    if (person.traits.empty())
      throw std::invalid_argument("person " + person.name + " has no traits");
    for (std::size_t a = 0; a < person.traits.size(); ++a)
      for (std::size_t b = a + 1; b < person.traits.size(); ++b)
        if (person.traits[a].name == person.traits[b].name)
          throw std::invalid_argument("person " + person.name +
                                      " has duplicate trait name '" +
                                      person.traits[a].name + "'");
  }

  const std::size_t n = spec.trait_player_count();
  const auto names = detail::trait_display_names(spec);
  std::vector<PlayerId> players;
  std::vector<std::vector<Action>> action_sets;
  std::vector<std::size_t> person_of;   // trait-player -> person index
  std::vector<const TraitPlayer*> trait_of;
  for (std::size_t p = 0; p < spec.persons.size(); ++p)
    for (const auto& trait : spec.persons[p].traits) {
      players.push_back({players.size(), names[players.size()]});
      action_sets.push_back(spec.alphabet);
      person_of.push_back(p);
      trait_of.push_back(&trait);
    }

  // Payoff-less shape, used only to enumerate profiles in tensor order.
  Game shape(players, action_sets, spec.scale_max, {});
  const std::size_t total = shape.profile_count();
  std::vector<std::vector<OrdinalRank>> payoffs;
  payoffs.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Profile profile = shape.profile_at(idx);
    const std::vector<Action> persons_act = person_actions(spec, profile);
    std::vector<OrdinalRank> row;
    row.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Action> others;
      others.reserve(spec.persons.size() - 1);
      for (std::size_t p = 0; p < spec.persons.size(); ++p)
        if (p != person_of[i]) others.push_back(persons_act[p]);
      row.push_back(trait_of[i]->generator.rank(
          spec.alphabet.at(profile[i]), persons_act[person_of[i]], others));
    }
    payoffs.push_back(std::move(row));
  }
  return Game(std::move(players), std::move(action_sets), spec.scale_max,
              std::move(payoffs));
}

// The two-person spec from the classic multiple-self Prisoners' Dilemma:
// persons P and Q, each with a mercenary and an altruistic trait.
inline CompositeSpec two_person_multiself_pd(int guilt = 1) {
  CompositeSpec spec;
  spec.persons = {
      {"P", {{"mercenary", make_mercenary()}, {"altruistic", make_altruistic(guilt)}}, {}},
      {"Q", {{"mercenary", make_mercenary()}, {"altruistic", make_altruistic(guilt)}}, {}},
  };
  return spec;
}

// Two persons with a single mercenary trait each: the classic two-player PD.
inline CompositeSpec two_person_mercenary_pd() {
  CompositeSpec spec;
  spec.persons = {
      {"P", {{"mercenary", make_mercenary()}}, {}},
      {"Q", {{"mercenary", make_mercenary()}}, {}},
  };
  return spec;
}

}  // namespace multiself
