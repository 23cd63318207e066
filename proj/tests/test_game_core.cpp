#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "multiself/game.hpp"
#include "oracles.hpp"

using namespace multiself;

namespace {

Game small_game(std::vector<std::size_t> action_counts,
                std::vector<std::vector<OrdinalRank>> payoffs = {}) {
  std::vector<PlayerId> players;
  std::vector<std::vector<Action>> sets;
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    players.push_back({i, "p" + std::to_string(i)});
    std::vector<Action> set;
    for (std::size_t a = 0; a < action_counts[i]; ++a)
      set.push_back({std::string(1, static_cast<char>('a' + a))});
    sets.push_back(std::move(set));
  }
  std::size_t total = 1;
  for (auto c : action_counts) total *= c;
  if (payoffs.empty())
    payoffs.assign(total, std::vector<OrdinalRank>(action_counts.size(),
                                                   OrdinalRank{1, 4}));
  return Game(std::move(players), std::move(sets), 4, std::move(payoffs));
}

}  // namespace

TEST_CASE("enumerate_profiles counts and order") {
  CHECK(enumerate_profiles(small_game({2, 2, 2, 2})).size() == 16);
  CHECK(enumerate_profiles(small_game({2, 2})).size() == 4);
  CHECK(enumerate_profiles(small_game({2, 3, 2})).size() == 12);

  const auto profiles = enumerate_profiles(small_game({2, 3, 2}));
  CHECK(profiles.front() == Profile{{0, 0, 0}});
  CHECK(profiles[1] == Profile{{0, 0, 1}});
  CHECK(profiles.back() == Profile{{1, 2, 1}});
  CHECK(std::is_sorted(profiles.begin(), profiles.end()));
  CHECK(std::set<Profile>(profiles.begin(), profiles.end()).size() ==
        profiles.size());
}

TEST_CASE("enumerate_profiles on an empty game yields one empty profile") {
  const Game empty({}, {}, 4, {{}});
  const auto profiles = enumerate_profiles(empty);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].size() == 0);
}

TEST_CASE("payoff_of is a pure lookup with argument checks") {
  auto game = small_game({2, 2});
  CHECK(payoff_of(game, Profile{{0, 1}}, std::size_t{0}).value == 1);
  CHECK_THROWS_AS(payoff_of(game, Profile{{0, 1}}, std::size_t{5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(payoff_of(game, Profile{{0, 1, 0}}, std::size_t{0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(payoff_of(game, Profile{{0, 7}}, std::size_t{0}),
                  std::invalid_argument);
}

TEST_CASE("unilateral_deviations") {
  auto binary = small_game({2, 2, 2, 2});
  CHECK(unilateral_deviations(binary, Profile{{0, 1, 0, 1}}, 2).size() == 1);

  auto three = small_game({2, 3, 2});
  const auto devs = unilateral_deviations(three, Profile{{0, 1, 0}}, 1);
  REQUIRE(devs.size() == 2);
  CHECK(devs[0] == Profile{{0, 0, 0}});
  CHECK(devs[1] == Profile{{0, 2, 0}});

  auto forced = small_game({1, 2});
  CHECK(unilateral_deviations(forced, Profile{{0, 0}}, 0).empty());
  CHECK_THROWS_AS(unilateral_deviations(binary, Profile{{0, 0, 0, 0}}, 9),
                  std::invalid_argument);
}

TEST_CASE("deviations plus the profile cover all off-player-fixed profiles") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Game game = oracles::random_game(rng);
    const Profile p = game.profile_at(trial % game.profile_count());
    for (std::size_t i = 0; i < game.player_count(); ++i) {
      auto devs = unilateral_deviations(game, p, i);
      devs.push_back(p);
      std::sort(devs.begin(), devs.end());
      std::vector<Profile> expected;
      for (std::size_t a = 0; a < game.actions_of(i).size(); ++a) {
        Profile q = p;
        q[i] = a;
        expected.push_back(q);
      }
      CHECK(devs == expected);
    }
  }
}

TEST_CASE("validate reports missing profiles and bound violations") {
  SECTION("complete game is clean") {
    CHECK(validate(small_game({2, 2})).ok());
  }
  SECTION("missing payoff names the profile") {
    std::vector<std::vector<OrdinalRank>> payoffs(4, {{2, 4}, {2, 4}});
    payoffs[2].clear();
    const auto report = validate(small_game({2, 2}, payoffs));
    REQUIRE_FALSE(report.ok());
    CHECK(report.findings[0].message.find("(p0=b,p1=a)") != std::string::npos);
  }
  SECTION("rank above scale_max is flagged") {
    std::vector<std::vector<OrdinalRank>> payoffs(4, {{2, 4}, {2, 4}});
    payoffs[1][1] = {5, 4};
    const auto report = validate(small_game({2, 2}, payoffs));
    REQUIRE_FALSE(report.ok());
    CHECK(report.findings[0].message.find("rank 5") != std::string::npos);
  }
  SECTION("duplicate action labels are flagged") {
    Game dup({{0, "p0"}}, {{{"x"}, {"x"}}}, 4, {{ {1, 4} }, { {1, 4} }});
    const auto report = validate(dup);
    REQUIRE_FALSE(report.ok());
    CHECK(report.findings[0].message.find("duplicate") != std::string::npos);
  }
}

TEST_CASE("validated random games stay within rank bounds") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Game game = oracles::random_game(rng);
    CHECK(validate(game).ok());
    for (const auto& p : enumerate_profiles(game))
      for (std::size_t i = 0; i < game.player_count(); ++i) {
        const auto r = payoff_of(game, p, i);
        CHECK(r.value >= 1);
        CHECK(r.value <= game.scale_max());
      }
  }
}
