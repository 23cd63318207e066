// Command-line front end: solve, table, best-responses, spe, framing,
// validate. Exit codes: 0 success, 1 usage error, 2 parse/validation error,
// 3 internal failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "multiself/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw multiself::ParseError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to '" + out_path + "'");
  out << text;
}

struct CommonOpts {
  std::string spec_path;
  std::string format = "text";
  std::string out_path;
  int guilt = -1;  // -1: no override

  std::optional<int> guilt_override() const {
    return guilt >= 0 ? std::optional<int>(guilt) : std::nullopt;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_guilt = true) {
  cmd->add_option("spec", opts.spec_path, "path to a game spec document")
      ->required();
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--out", opts.out_path, "write output to a file");
  if (with_guilt)
    cmd->add_option("--guilt", opts.guilt,
                    "override the altruistic guilt penalty")
        ->check(CLI::NonNegativeNumber);
}

multiself::MoveOrder parse_order(const multiself::Game& game,
                                 const std::string& text) {
  multiself::MoveOrder order;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ','))
    order.players.push_back(game.player_index(name));
  return order;
}

std::string render_order(const multiself::Game& game,
                         const multiself::MoveOrder& order) {
  std::string out;
  for (std::size_t i = 0; i < order.players.size(); ++i) {
    if (i) out += ",";
    out += game.players()[order.players[i]].display_name;
  }
  return out;
}

std::string render_profile(const multiself::Game& game,
                           const multiself::Profile& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i)
    out += (i ? "," : "") + game.actions_of(i)[p[i]].label;
  return out + ")";
}

struct LoadedGame {
  multiself::GameSpecDocument doc;
  multiself::Game game;
};

LoadedGame load(const CommonOpts& opts) {
  auto doc = multiself::parse_spec(read_file(opts.spec_path));
  auto game = multiself::build_game(doc, opts.guilt_override());
  return {std::move(doc), std::move(game)};
}

multiself::AnalysisDocument analyze(
    const LoadedGame& loaded,
    const std::optional<multiself::FramingReport>& framing = std::nullopt) {
  auto report = multiself::pure_nash(loaded.game);
  if (loaded.doc.composite)
    report = multiself::internal_conflict(std::move(report),
                                          *loaded.doc.composite);
  return multiself::make_analysis(loaded.game, loaded.doc, report,
                                  multiself::all_best_responses(loaded.game),
                                  framing);
}

int run_solve(const CommonOpts& opts) {
  const LoadedGame loaded = load(opts);
  const auto analysis = analyze(loaded);
  if (opts.format == "machine") {
    write_output(multiself::export_analysis(analysis), opts.out_path);
    return kExitOk;
  }
  std::ostringstream out;
  out << "equilibria (" << analysis.equilibria.size() << "):\n";
  for (std::size_t e = 0; e < analysis.equilibria.size(); ++e) {
    out << "  (";
    for (std::size_t i = 0; i < analysis.equilibria[e].size(); ++i)
      out << (i ? "," : "") << analysis.equilibria[e][i];
    out << ")";
    if (!analysis.persons.empty()) {
      out << "   conflicts:";
      for (std::size_t p = 0; p < analysis.persons.size(); ++p)
        out << " " << analysis.persons[p] << "="
            << (analysis.conflicts[e][p] ? "two-minds" : "agreed");
    }
    out << "\n";
  }
  if (analysis.equilibria.empty()) out << "  none\n";
  write_output(out.str(), opts.out_path);
  return kExitOk;
}

int run_table(const CommonOpts& opts) {
  const LoadedGame loaded = load(opts);
  const auto analysis = analyze(loaded);
  if (opts.format == "machine") {
    write_output(multiself::export_analysis(analysis), opts.out_path);
    return kExitOk;
  }
  write_output(multiself::render_table(loaded.game, analysis), opts.out_path);
  return kExitOk;
}

int run_best_responses(const CommonOpts& opts) {
  const LoadedGame loaded = load(opts);
  const auto analysis = analyze(loaded);
  if (opts.format == "machine") {
    write_output(multiself::export_analysis(analysis), opts.out_path);
    return kExitOk;
  }
  std::ostringstream out;
  for (const auto& m : analysis.marks) {
    out << m.player << " vs (";
    for (std::size_t i = 0; i < m.context.size(); ++i)
      out << (i ? "," : "") << m.context[i];
    out << ") -> {";
    for (std::size_t i = 0; i < m.responses.size(); ++i)
      out << (i ? "," : "") << m.responses[i];
    out << "}\n";
  }
  write_output(out.str(), opts.out_path);
  return kExitOk;
}

int run_spe(const CommonOpts& opts, const std::string& order_text) {
  const LoadedGame loaded = load(opts);
  const auto order = parse_order(loaded.game, order_text);
  const auto tree = multiself::sequentialize(loaded.game, order);
  const auto solution = multiself::backward_induction(tree);
  const multiself::FramingReport framing{{{order, solution.outcomes}}, true};
  if (opts.format == "machine") {
    write_output(multiself::export_analysis(analyze(loaded, framing)),
                 opts.out_path);
    return kExitOk;
  }
  std::ostringstream out;
  out << "order " << render_order(loaded.game, order)
      << " -> subgame-perfect outcomes:\n";
  for (const auto& p : solution.outcomes)
    out << "  " << render_profile(loaded.game, p) << "\n";
  write_output(out.str(), opts.out_path);
  return kExitOk;
}

int run_framing(const CommonOpts& opts, bool all_orders,
                const std::vector<std::string>& order_texts) {
  const LoadedGame loaded = load(opts);
  std::vector<multiself::MoveOrder> orders;
  if (all_orders) {
    orders = multiself::all_move_orders(loaded.game);
  } else {
    for (const auto& text : order_texts)
      orders.push_back(parse_order(loaded.game, text));
  }
  const auto framing = multiself::framing_report(loaded.game, orders);
  if (opts.format == "machine") {
    write_output(multiself::export_analysis(analyze(loaded, framing)),
                 opts.out_path);
    return kExitOk;
  }
  std::ostringstream out;
  for (const auto& e : framing.entries) {
    out << render_order(loaded.game, e.order) << " -> {";
    for (std::size_t i = 0; i < e.outcomes.size(); ++i)
      out << (i ? ", " : "") << render_profile(loaded.game, e.outcomes[i]);
    out << "}\n";
  }
  if (framing.entries.size() > 1)
    out << (framing.all_orders_agree
                ? "all orders produce the same outcome set\n"
                : "outcome sets differ across orders\n");
  write_output(out.str(), opts.out_path);
  return kExitOk;
}

int run_validate(const CommonOpts& opts) {
  const LoadedGame loaded = load(opts);
  const auto report = multiself::validate(loaded.game);
  if (report.ok()) {
    std::cout << "ok: " << loaded.game.player_count() << " players, "
              << loaded.game.profile_count() << " profiles\n";
    return kExitOk;
  }
  for (const auto& f : report.findings) std::cerr << f.message << "\n";
  return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple-self normal-form game builder and solver"};
  app.require_subcommand(1);

  CommonOpts solve_opts, table_opts, br_opts, spe_opts, framing_opts,
      validate_opts;
  std::string spe_order;
  bool framing_all = false;
  std::vector<std::string> framing_orders;

  add_common(app.add_subcommand("solve", "pure Nash equilibria and conflicts"),
             solve_opts);
  add_common(app.add_subcommand("table", "render the payoff table"),
             table_opts);
  add_common(app.add_subcommand("best-responses", "per-context best responses"),
             br_opts);
  auto* spe = app.add_subcommand(
      "spe", "subgame-perfect outcomes for one move order");
  add_common(spe, spe_opts);
  spe->add_option("--order", spe_order,
                  "comma-separated player names, first mover first")
      ->required();
  auto* framing = app.add_subcommand(
      "framing", "compare subgame-perfect outcomes across move orders");
  add_common(framing, framing_opts);
  auto* all_flag = framing->add_flag("--all-orders", framing_all,
                                     "analyze every move order");
  framing->add_option("--order", framing_orders, "a move order (repeatable)")
      ->excludes(all_flag);
  add_common(app.add_subcommand("validate", "check a spec document"),
             validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("solve")) return run_solve(solve_opts);
    if (app.got_subcommand("table")) return run_table(table_opts);
    if (app.got_subcommand("best-responses")) return run_best_responses(br_opts);
    if (app.got_subcommand("spe")) return run_spe(spe_opts, spe_order);
    if (app.got_subcommand("framing")) {
      if (!framing_all && framing_orders.empty()) {
        std::cerr << "framing requires --all-orders or --order\n";
        return kExitUsage;
      }
      return run_framing(framing_opts, framing_all, framing_orders);
    }
    if (app.got_subcommand("validate")) return run_validate(validate_opts);
    return kExitUsage;
  } catch (const multiself::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
