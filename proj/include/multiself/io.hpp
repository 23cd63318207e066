#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "multiself/composite.hpp"
#include "multiself/extensive.hpp"
#include "multiself/game.hpp"
#include "multiself/solver.hpp"

// Spec-file parsing (strict JSON, unknown fields rejected), deterministic
// analysis export, and the nested text table in the style of the four-player
// payoff table: outer grid over the two persons' first traits, inner grids
// over the remaining traits.

namespace multiself {

inline constexpr const char* kToolVersion = "multiself 0.1.0";
inline constexpr int kSchemaVersion = 1;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

namespace detail {

inline void reject_unknown(const json& obj,
                           std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known)
      throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

inline const json& require(const json& obj, const char* key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

inline std::string require_string(const json& obj, const char* key,
                                  const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string())
    throw ParseError("field '" + std::string(key) + "' in " + where +
                     " must be a string");
  return v.get<std::string>();
}

}  // namespace detail

// Exactly one of `composite` or `raw_game` is present after parsing.
struct GameSpecDocument {
  std::string title;
  std::string notes;
  std::optional<CompositeSpec> composite;
  std::optional<Game> raw_game;
  json echo;  // canonical re-serialization of the parsed document
};

namespace detail {

inline CompositeSpec parse_composite(const json& node) {
  if (!node.is_object()) throw ParseError("'composite' must be an object");
  reject_unknown(node, {"scale_max", "alphabet", "persons"}, "'composite'");
  CompositeSpec spec;
  if (node.contains("scale_max")) {
    if (!node["scale_max"].is_number_integer() || node["scale_max"].get<int>() < 1)
      throw ParseError("'composite.scale_max' must be a positive integer");
    spec.scale_max = node["scale_max"].get<int>();
  }
  if (node.contains("alphabet")) {
    spec.alphabet.clear();
    for (const auto& a : node["alphabet"]) {
      if (!a.is_string()) throw ParseError("'composite.alphabet' entries must be strings");
      spec.alphabet.push_back({a.get<std::string>()});
    }
    if (spec.alphabet.empty()) throw ParseError("'composite.alphabet' must be nonempty");
  }
  const json& persons = require(node, "persons", "'composite'");
  if (!persons.is_array() || persons.empty())
    throw ParseError("'composite.persons' must be a nonempty array");
  for (const auto& pnode : persons) {
    const std::string pwhere = "person #" + std::to_string(spec.persons.size());
    if (!pnode.is_object()) throw ParseError(pwhere + " must be an object");
    reject_unknown(pnode, {"name", "traits", "aggregation"}, pwhere);
    Person person;
    person.name = require_string(pnode, "name", pwhere);
    if (pnode.contains("aggregation")) {
      const std::string agg = pnode["aggregation"].get<std::string>();
      if (agg != "weakest-link")
        throw ParseError("unknown aggregation '" + agg + "' in " + pwhere);
    }
    const json& traits = require(pnode, "traits", pwhere);
    if (!traits.is_array() || traits.empty())
      throw ParseError("'traits' in " + pwhere + " must be a nonempty array");
    for (const auto& tnode : traits) {
      const std::string twhere = pwhere + " trait #" +
                                 std::to_string(person.traits.size());
      reject_unknown(tnode, {"name", "kind", "guilt"}, twhere);
      TraitPlayer trait;
      trait.name = require_string(tnode, "name", twhere);
      const std::string kind = require_string(tnode, "kind", twhere);
      if (kind == "mercenary") {
        if (tnode.contains("guilt"))
          throw ParseError("'guilt' is not allowed on a mercenary trait (" +
                           twhere + ")");
        trait.generator = make_mercenary();
      } else if (kind == "altruistic") {
        int guilt = 1;
        if (tnode.contains("guilt")) {
          if (!tnode["guilt"].is_number_integer() || tnode["guilt"].get<int>() < 0)
            throw ParseError("'guilt' in " + twhere + " must be an integer >= 0");
          guilt = tnode["guilt"].get<int>();
        }
        trait.generator = make_altruistic(guilt);
      } else {
        throw ParseError("unknown generator kind '" + kind + "' in " + twhere);
      }
      person.traits.push_back(std::move(trait));
    }
    spec.persons.push_back(std::move(person));
  }
  return spec;
}

inline Game parse_raw_game(const json& node) {
  if (!node.is_object()) throw ParseError("'raw' must be an object");
  reject_unknown(node, {"scale_max", "players", "actions", "payoffs"}, "'raw'");
  const json& jplayers = require(node, "players", "'raw'");
  const json& jactions = require(node, "actions", "'raw'");
  const json& jpayoffs = require(node, "payoffs", "'raw'");
  if (!jplayers.is_array() || jplayers.empty())
    throw ParseError("'raw.players' must be a nonempty array");
  if (!jactions.is_array() || jactions.size() != jplayers.size())
    throw ParseError("'raw.actions' must list one action set per player");
  int scale_max = 4;
  if (node.contains("scale_max")) scale_max = node["scale_max"].get<int>();

  std::vector<PlayerId> players;
  std::vector<std::vector<Action>> action_sets;
  for (std::size_t i = 0; i < jplayers.size(); ++i) {
    players.push_back({i, jplayers[i].get<std::string>()});
    std::vector<Action> set;
    for (const auto& a : jactions[i]) set.push_back({a.get<std::string>()});
    action_sets.push_back(std::move(set));
  }

  std::size_t expected = 1;
  for (const auto& s : action_sets) expected *= s.size();
  if (!jpayoffs.is_array() || jpayoffs.size() != expected)
    throw ParseError("'raw.payoffs' must have exactly " +
                     std::to_string(expected) +
                     " rows (one per profile, lexicographic order); got " +
                     std::to_string(jpayoffs.size()));
  std::vector<std::vector<OrdinalRank>> payoffs;
  for (const auto& row : jpayoffs) {
    if (!row.is_array() || row.size() != players.size())
      throw ParseError("'raw.payoffs' rows must carry one rank per player");
    std::vector<OrdinalRank> ranks;
    for (const auto& r : row) ranks.push_back({r.get<int>(), scale_max});
    payoffs.push_back(std::move(ranks));
  }
  Game game(std::move(players), std::move(action_sets), scale_max,
            std::move(payoffs));
  const ValidationReport report = validate(game);
  if (!report.ok())
    throw ParseError("'raw' game failed validation: " +
                     report.findings.front().message);
  return game;
}

inline json echo_composite(const CompositeSpec& spec) {
  json out;
  out["scale_max"] = spec.scale_max;
  json alphabet = json::array();
  for (const auto& a : spec.alphabet) alphabet.push_back(a.label);
  out["alphabet"] = alphabet;
  json persons = json::array();
  for (const auto& person : spec.persons) {
    json p;
    p["name"] = person.name;
    p["aggregation"] = "weakest-link";
    json traits = json::array();
    for (const auto& trait : person.traits) {
      json t;
      t["name"] = trait.name;
      t["kind"] = trait.generator.kind == TraitKind::mercenary ? "mercenary"
                                                               : "altruistic";
      if (trait.generator.kind == TraitKind::altruistic)
        t["guilt"] = trait.generator.guilt_penalty;
      traits.push_back(t);
    }
    p["traits"] = traits;
    persons.push_back(p);
  }
  out["persons"] = persons;
  return out;
}

inline json echo_raw(const Game& game) {
  json out;
  out["scale_max"] = game.scale_max();
  json players = json::array();
  for (const auto& p : game.players()) players.push_back(p.display_name);
  out["players"] = players;
  json actions = json::array();
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    json set = json::array();
    for (const auto& a : game.actions_of(i)) set.push_back(a.label);
    actions.push_back(set);
  }
  out["actions"] = actions;
  json payoffs = json::array();
  for (std::size_t idx = 0; idx < game.profile_count(); ++idx) {
    json row = json::array();
    for (const auto& r : game.rank_vector(game.profile_at(idx)))
      row.push_back(r.value);
    payoffs.push_back(row);
  }
  out["payoffs"] = payoffs;
  return out;
}

}  // namespace detail

inline GameSpecDocument parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec document must be a JSON object");
  detail::reject_unknown(
      doc, {"schema_version", "title", "notes", "composite", "raw"},
      "spec document");
  const json& version = detail::require(doc, "schema_version", "spec document");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw ParseError("unsupported schema_version (expected " +
                     std::to_string(kSchemaVersion) + ")");
  const bool has_composite = doc.contains("composite");
  const bool has_raw = doc.contains("raw");
  if (has_composite == has_raw)
    throw ParseError("spec document must contain exactly one of 'composite' or 'raw'");

  GameSpecDocument out;
  if (doc.contains("title")) out.title = doc["title"].get<std::string>();
  if (doc.contains("notes")) out.notes = doc["notes"].get<std::string>();
  out.echo["schema_version"] = kSchemaVersion;
  if (!out.title.empty()) out.echo["title"] = out.title;
  if (!out.notes.empty()) out.echo["notes"] = out.notes;
  if (has_composite) {
    out.composite = detail::parse_composite(doc["composite"]);
    out.echo["composite"] = detail::echo_composite(*out.composite);
  } else {
    out.raw_game = detail::parse_raw_game(doc["raw"]);
    out.echo["raw"] = detail::echo_raw(*out.raw_game);
  }
  return out;
}

// Applies a guilt override (if any) to every altruistic trait and builds the
// game described by the document.
inline Game build_game(const GameSpecDocument& doc,
                       std::optional<int> guilt_override = std::nullopt) {
  if (doc.raw_game) {
    if (guilt_override)
      throw ParseError("--guilt only applies to composite specs");
    return *doc.raw_game;
  }
  CompositeSpec spec = *doc.composite;
  if (guilt_override) {
    if (*guilt_override < 0) throw ParseError("guilt must be >= 0");
    for (auto& person : spec.persons)
      for (auto& trait : person.traits)
        if (trait.generator.kind == TraitKind::altruistic)
          trait.generator.guilt_penalty = *guilt_override;
  }
  return build_composite_game(spec);
}

struct AnalysisDocument {
  json spec_echo;
  std::string tool_version = kToolVersion;
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> equilibria;  // action labels
  std::vector<std::string> persons;                  // empty for raw games
  std::vector<std::vector<bool>> conflicts;          // parallel to equilibria
  struct Mark {
    std::string player;
    std::vector<std::string> context;  // own slot rendered as "*"
    std::vector<std::string> responses;
  };
  std::vector<Mark> marks;
  struct Framing {
    struct Entry {
      std::vector<std::string> order;
      std::vector<std::vector<std::string>> outcomes;
    };
    std::vector<Entry> entries;
    bool all_orders_agree = true;
  };
  std::optional<Framing> framing;

  friend bool operator==(const AnalysisDocument& a, const AnalysisDocument& b);
};

namespace detail {

inline std::vector<std::string> profile_labels(const Game& game,
                                               const Profile& p) {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out.push_back(game.actions_of(i)[p[i]].label);
  return out;
}

}  // namespace detail

inline AnalysisDocument make_analysis(
    const Game& game, const GameSpecDocument& doc,
    const EquilibriumReport& report, const std::vector<BestResponseMark>& marks,
    const std::optional<FramingReport>& framing = std::nullopt) {
  AnalysisDocument a;
  a.spec_echo = doc.echo;
  for (const auto& p : game.players()) a.players.push_back(p.display_name);
  for (const auto& eq : report.equilibria)
    a.equilibria.push_back(detail::profile_labels(game, eq));
  if (doc.composite)
    for (const auto& person : doc.composite->persons)
      a.persons.push_back(person.name);
  a.conflicts = report.conflicts;
  for (const auto& m : marks) {
    AnalysisDocument::Mark mark;
    mark.player = game.players()[m.player].display_name;
    mark.context = detail::profile_labels(game, m.context);
    mark.context[m.player] = "*";
    for (std::size_t r : m.responses)
      mark.responses.push_back(game.actions_of(m.player)[r].label);
    a.marks.push_back(std::move(mark));
  }
  if (framing) {
    AnalysisDocument::Framing f;
    f.all_orders_agree = framing->all_orders_agree;
    for (const auto& e : framing->entries) {
      AnalysisDocument::Framing::Entry entry;
      for (std::size_t p : e.order.players)
        entry.order.push_back(game.players()[p].display_name);
      for (const auto& o : e.outcomes)
        entry.outcomes.push_back(detail::profile_labels(game, o));
      f.entries.push_back(std::move(entry));
    }
    a.framing = std::move(f);
  }
  return a;
}

inline bool operator==(const AnalysisDocument& a, const AnalysisDocument& b) {
  auto marks_eq = [](const AnalysisDocument& x, const AnalysisDocument& y) {
    if (x.marks.size() != y.marks.size()) return false;
    for (std::size_t i = 0; i < x.marks.size(); ++i)
      if (x.marks[i].player != y.marks[i].player ||
          x.marks[i].context != y.marks[i].context ||
          x.marks[i].responses != y.marks[i].responses)
        return false;
    return true;
  };
  auto framing_eq = [](const AnalysisDocument& x, const AnalysisDocument& y) {
    if (x.framing.has_value() != y.framing.has_value()) return false;
    if (!x.framing) return true;
    if (x.framing->all_orders_agree != y.framing->all_orders_agree) return false;
    if (x.framing->entries.size() != y.framing->entries.size()) return false;
    for (std::size_t i = 0; i < x.framing->entries.size(); ++i)
      if (x.framing->entries[i].order != y.framing->entries[i].order ||
          x.framing->entries[i].outcomes != y.framing->entries[i].outcomes)
        return false;
    return true;
  };
  return a.spec_echo == b.spec_echo && a.tool_version == b.tool_version &&
         a.players == b.players && a.equilibria == b.equilibria &&
         a.persons == b.persons && a.conflicts == b.conflicts &&
         marks_eq(a, b) && framing_eq(a, b);
}

// Deterministic: nlohmann::json keeps object keys sorted, so identical
// documents serialize byte-identically.
inline std::string export_analysis(const AnalysisDocument& a) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool_version"] = a.tool_version;
  doc["spec"] = a.spec_echo;
  doc["players"] = a.players;
  doc["equilibria"] = a.equilibria;
  doc["persons"] = a.persons;
  doc["conflicts"] = a.conflicts;
  json marks = json::array();
  for (const auto& m : a.marks) {
    json jm;
    jm["player"] = m.player;
    jm["context"] = m.context;
    jm["responses"] = m.responses;
    marks.push_back(jm);
  }
  doc["best_responses"] = marks;
  if (a.framing) {
    json f;
    f["all_orders_agree"] = a.framing->all_orders_agree;
    json entries = json::array();
    for (const auto& e : a.framing->entries) {
      json je;
      je["order"] = e.order;
      je["outcomes"] = e.outcomes;
      entries.push_back(je);
    }
    f["entries"] = entries;
    doc["framing"] = f;
  }
  return doc.dump(2) + "\n";
}

inline AnalysisDocument parse_export(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  detail::reject_unknown(doc,
                         {"schema_version", "tool_version", "spec", "players",
                          "equilibria", "persons", "conflicts",
                          "best_responses", "framing"},
                         "analysis document");
  AnalysisDocument a;
  a.tool_version = detail::require(doc, "tool_version", "analysis").get<std::string>();
  a.spec_echo = detail::require(doc, "spec", "analysis");
  a.players = detail::require(doc, "players", "analysis").get<std::vector<std::string>>();
  a.equilibria = detail::require(doc, "equilibria", "analysis")
                     .get<std::vector<std::vector<std::string>>>();
  a.persons = detail::require(doc, "persons", "analysis").get<std::vector<std::string>>();
  a.conflicts = detail::require(doc, "conflicts", "analysis")
                    .get<std::vector<std::vector<bool>>>();
  for (const auto& jm : detail::require(doc, "best_responses", "analysis")) {
    AnalysisDocument::Mark m;
    m.player = jm.at("player").get<std::string>();
    m.context = jm.at("context").get<std::vector<std::string>>();
    m.responses = jm.at("responses").get<std::vector<std::string>>();
    a.marks.push_back(std::move(m));
  }
  if (doc.contains("framing")) {
    AnalysisDocument::Framing f;
    f.all_orders_agree = doc["framing"].at("all_orders_agree").get<bool>();
    for (const auto& je : doc["framing"].at("entries")) {
      AnalysisDocument::Framing::Entry e;
      e.order = je.at("order").get<std::vector<std::string>>();
      e.outcomes = je.at("outcomes").get<std::vector<std::vector<std::string>>>();
      f.entries.push_back(std::move(e));
    }
    a.framing = std::move(f);
  }
  return a;
}

namespace detail {

// True iff `player`'s action in `profile` is one of its best responses.
inline bool marked(const AnalysisDocument& a, const Game& game,
                   const Profile& profile, std::size_t player) {
  std::vector<std::string> context = profile_labels(game, profile);
  const std::string own = context[player];
  context[player] = "*";
  const std::string& name = game.players()[player].display_name;
  for (const auto& m : a.marks)
    if (m.player == name && m.context == context)
      return std::find(m.responses.begin(), m.responses.end(), own) !=
             m.responses.end();
  return false;
}

inline bool is_equilibrium(const AnalysisDocument& a, const Game& game,
                           const Profile& profile) {
  const auto labels = profile_labels(game, profile);
  return std::find(a.equilibria.begin(), a.equilibria.end(), labels) !=
         a.equilibria.end();
}

// One cell: per-player ranks with best-response stars, bracketed when the
// profile is an equilibrium.
inline std::string render_cell(const AnalysisDocument& a, const Game& game,
                               const Profile& profile) {
  std::string body;
  const auto& ranks = game.rank_vector(profile);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i) body += " ";
    body += std::to_string(ranks[i].value);
    body += marked(a, game, profile, i) ? "*" : " ";
  }
  if (is_equilibrium(a, game, profile)) return "[" + body + "]";
  return " " + body + " ";
}

inline std::string pad(std::string s, std::size_t width) {
  while (s.size() < width) s += ' ';
  return s;
}

inline std::string render_nested_table(const Game& game,
                                       const AnalysisDocument& a) {
  // Player order is person-major: 0,1 belong to the first person, 2,3 to the
  // second. Outer grid over players 0 and 2, inner grids over 1 and 3.
  const auto& p0 = game.actions_of(0);
  const auto& p1 = game.actions_of(1);
  const auto& q0 = game.actions_of(2);
  const auto& q1 = game.actions_of(3);
  const auto& names = game.players();

  std::size_t cell_w = 0;
  for (std::size_t idx = 0; idx < game.profile_count(); ++idx)
    cell_w = std::max(cell_w,
                      render_cell(a, game, game.profile_at(idx)).size());
  cell_w += 2;

  const std::size_t row_label_w =
      names[0].display_name.size() + names[1].display_name.size() + 8;

  std::ostringstream out;
  out << pad("", row_label_w) << "|";
  for (const auto& act0 : q0) {
    std::string head = " " + names[2].display_name + "=" + act0.label;
    out << pad(head, cell_w * q1.size()) << "|";
  }
  out << "\n" << pad("", row_label_w) << "|";
  for (std::size_t c0 = 0; c0 < q0.size(); ++c0)
    for (const auto& act1 : q1)
      out << pad(" " + names[3].display_name + "=" + act1.label, cell_w)
          << (&act1 == &q1.back() ? "|" : "");
  out << "\n"
      << std::string(row_label_w + (cell_w * q1.size() + 1) * q0.size(), '-')
      << "\n";
  for (std::size_t r0 = 0; r0 < p0.size(); ++r0) {
    for (std::size_t r1 = 0; r1 < p1.size(); ++r1) {
      std::string label = names[0].display_name + "=" + p0[r0].label + " " +
                          names[1].display_name + "=" + p1[r1].label + " ";
      out << pad(label, row_label_w) << "|";
      for (std::size_t c0 = 0; c0 < q0.size(); ++c0) {
        for (std::size_t c1 = 0; c1 < q1.size(); ++c1) {
          Profile profile{{r0, r1, c0, c1}};
          out << pad(render_cell(a, game, profile), cell_w);
        }
        out << "|";
      }
      out << "\n";
    }
    if (r0 + 1 < p0.size()) out << "\n";
  }
  return out.str();
}

inline std::string render_flat_listing(const Game& game,
                                       const AnalysisDocument& a) {
  std::ostringstream out;
  for (std::size_t idx = 0; idx < game.profile_count(); ++idx) {
    const Profile p = game.profile_at(idx);
    out << pad(game.describe(p), 28) << " "
        << render_cell(a, game, p)
        << (is_equilibrium(a, game, p) ? "  NE" : "") << "\n";
  }
  return out.str();
}

}  // namespace detail

// Nested table for 2-person x 2-trait games (4 binaryish players grouped in
// pairs); flat profile/rank listing otherwise. '*' marks a best response,
// '[..]' brackets an equilibrium cell.
inline std::string render_table(const Game& game, const AnalysisDocument& a) {
  std::vector<std::string> players;
  for (const auto& p : game.players()) players.push_back(p.display_name);
  if (players != a.players)
    throw ParseError("analysis document does not match this game");
  std::ostringstream out;
  bool nested = game.player_count() == 4 && a.persons.size() == 2;
  if (nested && a.spec_echo.contains("composite"))
    for (const auto& person : a.spec_echo["composite"]["persons"])
      if (person.at("traits").size() != 2) nested = false;
  out << (nested ? detail::render_nested_table(game, a)
                 : detail::render_flat_listing(game, a));
  out << "\nequilibria: ";
  if (a.equilibria.empty()) {
    out << "none\n";
  } else {
    for (std::size_t i = 0; i < a.equilibria.size(); ++i) {
      if (i) out << ", ";
      out << "(";
      for (std::size_t j = 0; j < a.equilibria[i].size(); ++j)
        out << (j ? "," : "") << a.equilibria[i][j];
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace multiself
