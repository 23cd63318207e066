#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "multiself/game.hpp"

// Sequentialization of a strategic game into a perfect-information tree under
// a chosen move order, and backward induction over it. Ties are never broken
// by a policy: every rank-maximal continuation propagates, so the outcome set
// covers all subgame-perfect tie resolutions.

namespace multiself {

struct MoveOrder {
  std::vector<std::size_t> players;  // permutation of all player indices
};

inline MoveOrder identity_order(const Game& game) {
  MoveOrder order;
  order.players.resize(game.player_count());
  for (std::size_t i = 0; i < order.players.size(); ++i) order.players[i] = i;
  return order;
}

struct TreeNode {
  std::size_t mover = 0;  // meaningful for internal nodes only
  std::vector<std::unique_ptr<TreeNode>> children;  // one per mover action
  Profile leaf_profile;   // complete profile, leaves only
  std::vector<OrdinalRank> leaf_ranks;

  bool is_leaf() const { return children.empty(); }
};

struct GameTree {
  const Game* game = nullptr;
  MoveOrder order;
  std::unique_ptr<TreeNode> root;

  std::size_t leaf_count() const { return count_leaves(*root); }

 private:
  static std::size_t count_leaves(const TreeNode& n) {
    if (n.is_leaf()) return 1;
    std::size_t total = 0;
    for (const auto& c : n.children) total += count_leaves(*c);
    return total;
  }
};

namespace detail {

inline void check_permutation(const Game& game, const MoveOrder& order) {
  if (order.players.size() != game.player_count())
    throw std::invalid_argument("move order must list every player once");
  std::vector<bool> seen(game.player_count(), false);
  for (std::size_t p : order.players) {
    if (p >= game.player_count() || seen[p])
      throw std::invalid_argument("move order is not a player permutation");
    seen[p] = true;
  }
}

inline std::unique_ptr<TreeNode> grow(const Game& game, const MoveOrder& order,
                                      std::size_t depth, Profile& partial) {
  auto node = std::make_unique<TreeNode>();
  if (depth == order.players.size()) {
    node->leaf_profile = partial;
    node->leaf_ranks = game.rank_vector(partial);
    return node;
  }
  const std::size_t mover = order.players[depth];
  node->mover = mover;
  const std::size_t n_actions = game.actions_of(mover).size();
  node->children.reserve(n_actions);
  for (std::size_t a = 0; a < n_actions; ++a) {
    partial[mover] = a;
    node->children.push_back(grow(game, order, depth + 1, partial));
  }
  return node;
}

}  // namespace detail

// Perfect information: each mover observes all earlier moves. Leaf payoffs
// are copied from the strategic game.
inline GameTree sequentialize(const Game& game, const MoveOrder& order) {
  detail::check_permutation(game, order);
  GameTree tree;
  tree.game = &game;
  tree.order = order;
  Profile partial;
  partial.actions.assign(game.player_count(), 0);
  tree.root = detail::grow(game, order, 0, partial);
  return tree;
}

struct InductionSolution {
  std::vector<Profile> outcomes;  // lexicographic, deduplicated
  // History (action indices along the path from the root) -> the mover's
  // optimal actions at that node, i.e. actions leading to at least one
  // surviving continuation.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> optimal_actions;
};

namespace detail {

// Returns the subgame-perfect outcome leaves of the subtree. A leaf from
// child c survives iff its mover-rank is at least the worst surviving value
// of every other child: some tie resolution of the other subtrees then makes
// choosing c optimal.
inline std::vector<Profile> induce(const Game& game, const TreeNode& node,
                                   std::vector<std::size_t>& history,
                                   InductionSolution& sol) {
  if (node.is_leaf()) return {node.leaf_profile};

  std::vector<std::vector<Profile>> child_outcomes;
  child_outcomes.reserve(node.children.size());
  for (std::size_t a = 0; a < node.children.size(); ++a) {
    history.push_back(a);
    child_outcomes.push_back(induce(game, *node.children[a], history, sol));
    history.pop_back();
  }

  auto mover_rank = [&](const Profile& p) {
    return payoff_of(game, p, node.mover).value;
  };
  std::vector<int> child_min(node.children.size());
  for (std::size_t a = 0; a < node.children.size(); ++a) {
    int m = game.scale_max() + 1;
    for (const auto& p : child_outcomes[a]) m = std::min(m, mover_rank(p));
    child_min[a] = m;
  }

  std::vector<Profile> surviving;
  std::vector<std::size_t> optimal;
  for (std::size_t a = 0; a < node.children.size(); ++a) {
    int threshold = 0;
    for (std::size_t b = 0; b < node.children.size(); ++b)
      if (b != a) threshold = std::max(threshold, child_min[b]);
    bool any = false;
    for (const auto& p : child_outcomes[a])
      if (mover_rank(p) >= threshold) {
        surviving.push_back(p);
        any = true;
      }
    if (any) optimal.push_back(a);
  }
  sol.optimal_actions[history] = std::move(optimal);
  return surviving;
}

}  // namespace detail

inline InductionSolution backward_induction(const GameTree& tree) {
  if (!tree.game || !tree.root)
    throw std::invalid_argument("empty game tree");
  InductionSolution sol;
  std::vector<std::size_t> history;
  sol.outcomes = detail::induce(*tree.game, *tree.root, history, sol);
  std::sort(sol.outcomes.begin(), sol.outcomes.end());
  sol.outcomes.erase(std::unique(sol.outcomes.begin(), sol.outcomes.end()),
                     sol.outcomes.end());
  return sol;
}

struct FramingEntry {
  MoveOrder order;
  std::vector<Profile> outcomes;
};

struct FramingReport {
  std::vector<FramingEntry> entries;
  bool all_orders_agree = true;  // meaningful when entries.size() > 1
};

// Sequentialize + backward-induce per order, side by side. States whether
// any two orders produce different outcome sets; asserts nothing about which.
inline FramingReport framing_report(const Game& game,
                                    const std::vector<MoveOrder>& orders) {
  if (orders.empty())
    throw std::invalid_argument("framing report needs at least one order");
  FramingReport report;
  report.entries.reserve(orders.size());
  for (const auto& order : orders) {
    const GameTree tree = sequentialize(game, order);
    report.entries.push_back({order, backward_induction(tree).outcomes});
  }
  for (const auto& e : report.entries)
    if (e.outcomes != report.entries.front().outcomes)
      report.all_orders_agree = false;
  return report;
}

inline std::vector<MoveOrder> all_move_orders(const Game& game) {
  std::vector<std::size_t> perm(game.player_count());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::vector<MoveOrder> orders;
  do {
    orders.push_back({perm});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return orders;
}

}  // namespace multiself
