#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cycle_rank.hpp"
#include "digraph.hpp"
#include "elimination.hpp"

namespace cyclerank {

enum class SeparatorMode { exact_below_limit, greedy };

struct ApproxConfig {
  /// Strongly connected pieces of at most this many vertices are solved
  /// directly. nullopt = auto: max(1, ceil((log2 n)^{3/2})).
  std::optional<std::size_t> base_threshold;
  SeparatorMode separator_mode = SeparatorMode::exact_below_limit;
  std::size_t exact_separator_limit = 12;
  /// Base pieces up to this order use crank_exact, larger ones a greedy
  /// deletion forest.
  std::size_t exact_base_limit = 20;
};

inline std::size_t resolve_base_threshold(const ApproxConfig& cfg, std::size_t n) {
  if (cfg.base_threshold) {
    if (*cfg.base_threshold == 0) throw InputError("base threshold must be positive");
    return *cfg.base_threshold;
  }
  if (n < 2) return 1;
  double t = std::ceil(std::pow(std::log2(static_cast<double>(n)), 1.5));
  return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

namespace detail {

inline std::size_t largest_scc(const Digraph& g, const VertexSet& within) {
  std::size_t big = 0;
  for (const auto& c : scc(g, within).components) big = std::max(big, c.size());
  return big;
}

inline bool three_quarter_balanced(const Digraph& g, const VertexSet& w,
                                   const VertexSet& s) {
  const std::size_t cap = (3 * w.size() + 3) / 4;
  return largest_scc(g, w - s) <= cap;
}

}  // namespace detail

/// Non-empty S ⊆ W such that every SCC of G[W] - S has at most ceil(3|W|/4)
/// vertices. Exact minimum (lexicographic tie-break) when |W| is at most
/// cfg.exact_separator_limit in exact mode; otherwise greedy: repeatedly delete
/// the vertex that leaves the smallest largest SCC (ties by id).
inline VertexSet find_balanced_separator(const Digraph& g, const VertexSet& w,
                                         const ApproxConfig& cfg = {}) {
  if (w.empty()) throw InputError("find_balanced_separator: empty target set");
  const auto members = w.to_vector();
  if (cfg.separator_mode == SeparatorMode::exact_below_limit &&
      members.size() <= cfg.exact_separator_limit) {
    for (std::size_t k = 1; k <= members.size(); ++k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        VertexSet s(g.order());
        for (std::size_t i : idx) s.insert(members[i]);
        if (detail::three_quarter_balanced(g, w, s)) return s;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == members.size() - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return w;
  }
  VertexSet s(g.order());
  do {
    // Only vertices of a current largest component can shrink it.
    VertexSet rest = w - s;
    auto comps = scc(g, rest).components;
    const VertexSet* big = &comps.front();
    for (const auto& c : comps) {
      if (c.size() > big->size()) big = &c;
    }
    Vertex pick = big->min();
    std::size_t pick_score = static_cast<std::size_t>(-1);
    for (Vertex v : *big) {
      std::size_t score = detail::largest_scc(g, rest.without(v));
      if (score < pick_score) {
        pick_score = score;
        pick = v;
      }
    }
    s.insert(pick);
  } while (!detail::three_quarter_balanced(g, w, s));
  return s;
}

/// Given a valid forest F for G[W ∪ X] and a vertex s outside W ∪ X, returns
/// a valid forest for G[W ∪ X ∪ {s}]: if s lies on a cycle of the larger
/// graph, the trees for the components merging with s become children of a
/// new root (s, C) where C is the SCC of s; every other tree is kept.
inline EliminationForest extend_forest(const Digraph& g, const VertexSet& w,
                                       const VertexSet& x, Vertex s,
                                       EliminationForest f) {
  VertexSet base = w | x;
  if (s >= g.order()) throw InputError("extend_forest: vertex out of range");
  if (base.contains(s)) throw InputError("extend_forest: s already in W ∪ X");
  VertexSet grown = base.with(s);
  VertexSet merged(g.order());
  for (const auto& c : scc(g, grown).components) {
    if (c.contains(s)) {
      merged = c;
      break;
    }
  }
  if (!is_nontrivial_component(g, merged)) return f;
  EliminationNode root;
  root.pivot = s;
  root.scope = merged;
  EliminationForest out;
  for (auto& t : f.trees) {
    if (t.scope.is_subset_of(merged)) {
      root.children.push_back(std::move(t));
    } else {
      out.trees.push_back(std::move(t));
    }
  }
  out.trees.push_back(std::move(root));
  return canonicalize(g, grown, std::move(out));
}

/// Separator found for a strongly connected piece during crank_approx.
struct SeparatorStep {
  std::size_t depth = 0;  // number of enclosing separator splits
  std::size_t piece_size = 0;
  std::size_t separator_size = 0;
};

struct ApproxResult {
  EliminationForest forest;
  std::size_t height = 0;
  std::vector<SeparatorStep> steps;
  std::size_t base_threshold = 0;
};

namespace detail {

// Elimination forest for a nontrivial strongly connected W that always pivots
// on a vertex of maximum degree inside G[W] (ties by id).
inline EliminationNode greedy_tree(const Digraph& g, const VertexSet& w) {
  Vertex pick = w.min();
  std::size_t pick_deg = 0;
  for (Vertex v : w) {
    std::size_t deg = 0;
    for (Vertex u : g.out(v)) deg += w.contains(u);
    for (Vertex u : g.in(v)) deg += w.contains(u);
    if (deg > pick_deg) {
      pick_deg = deg;
      pick = v;
    }
  }
  EliminationNode node;
  node.pivot = pick;
  node.scope = w;
  for (const auto& c : nontrivial_sccs(g, w.without(pick))) {
    node.children.push_back(greedy_tree(g, c));
  }
  return node;
}

class ApproxSolver {
 public:
  ApproxSolver(const Digraph& g, const ApproxConfig& cfg)
      : g_(g), cfg_(cfg), threshold_(resolve_base_threshold(cfg, g.order())) {}

  EliminationForest solve(const VertexSet& w, std::size_t depth) {
    EliminationForest out;
    for (const auto& c : nontrivial_sccs(g_, w)) {
      auto part = solve_connected(c, depth);
      for (auto& t : part.trees) out.trees.push_back(std::move(t));
    }
    return out;
  }

  std::vector<SeparatorStep> steps;
  std::size_t threshold() const noexcept { return threshold_; }

 private:
  EliminationForest solve_connected(const VertexSet& w, std::size_t depth) {
    if (w.size() <= threshold_) return base(w);
    VertexSet sep = find_balanced_separator(g_, w, cfg_);
    steps.push_back({depth, w.size(), sep.size()});
    VertexSet rest = w - sep;
    EliminationForest f = solve(rest, depth + 1);
    VertexSet placed(g_.order());
    for (Vertex s : sep) {
      f = extend_forest(g_, rest, placed, s, std::move(f));
      placed.insert(s);
    }
    return f;
  }

  EliminationForest base(const VertexSet& w) {
    if (w.size() <= cfg_.exact_base_limit && w.size() <= kMaskBits) {
      auto sub = induced(g_, w);
      return lift(crank_exact(sub.graph).witness, sub, g_.order());
    }
    EliminationForest f;
    f.trees.push_back(greedy_tree(g_, w));
    return f;
  }

  const Digraph& g_;
  const ApproxConfig& cfg_;
  std::size_t threshold_;
};

}  // namespace detail

/// Polynomial-time (outside the base case) elimination forest by recursive
/// balanced separation: split into SCCs; for a strongly connected W above the
/// base threshold find S with every SCC of G[W] - S of size <= ceil(3|W|/4),
/// recurse on G[W] - S, then add the vertices of S back in ascending order
/// with extend_forest.
inline ApproxResult crank_approx(const Digraph& g, const ApproxConfig& cfg = {}) {
  detail::ApproxSolver solver(g, cfg);
  ApproxResult res;
  res.base_threshold = solver.threshold();
  res.forest = canonicalize(g, solver.solve(g.vertices(), 0));
  res.height = height(res.forest);
  res.steps = std::move(solver.steps);
  return res;
}

}  // namespace cyclerank
