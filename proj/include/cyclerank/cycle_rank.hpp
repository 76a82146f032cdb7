#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "detail/mask_table.hpp"
#include "digraph.hpp"
#include "elimination.hpp"
#include "mask_graph.hpp"

namespace cyclerank {

/// Literal evaluation of the inductive definition: 0 if acyclic; 1 + the best
/// single-vertex deletion if strongly connected with an edge; otherwise the
/// maximum over the strongly connected components. Subsets are cached, nothing
/// else is shared with crank_exact. Throws CapacityError above `max_order`.
inline std::size_t crank_bruteforce(const Digraph& g, std::size_t max_order = 10) {
  if (g.order() > max_order) {
    throw CapacityError("crank_bruteforce: order " + std::to_string(g.order()) +
                        " exceeds limit " + std::to_string(max_order));
  }
  std::map<std::vector<Vertex>, std::size_t> cache;
  auto eval = [&](auto& self, const VertexSet& u) -> std::size_t {
    auto key = u.to_vector();
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto sub = induced(g, u);
    std::size_t result = 0;
    if (!is_acyclic(sub.graph)) {
      auto comps = scc(sub.graph).components;
      if (comps.size() == 1) {
        std::size_t best = static_cast<std::size_t>(-1);
        for (Vertex v : u) best = std::min(best, self(self, u.without(v)));
        result = 1 + best;
      } else {
        for (const auto& c : comps) {
          result = std::max(result, self(self, sub.lift(c, g.order())));
        }
      }
    }
    cache.emplace(std::move(key), result);
    return result;
  };
  return eval(eval, g.vertices());
}

struct CrankStats {
  std::size_t memo_entries = 0;  // strongly connected subsets evaluated
  double elapsed_seconds = 0;
};

struct CrankResult {
  std::size_t value = 0;
  EliminationForest witness;
  CrankStats stats;
};

struct ExactOptions {
  /// Abort with CapacityError once the memo table holds this many subsets
  /// (0 = unlimited).
  std::size_t memo_limit = 0;
};

namespace detail {

// Memoized recursion over nontrivial strongly connected subsets X:
//   f(X) = min_{x in X} crank(x, X)
//   crank(x, X) = 1 + max{ f(Y) : Y nontrivial SCC of G[X] - x }   (max ∅ = 0)
class ExactCycleRank {
 public:
  ExactCycleRank(const Digraph& g, ExactOptions opts)
      : graph_(g), masks_(g), opts_(opts) {}

  std::uint8_t rank_of(Mask x_set) {
    if (auto hit = memo_.find(x_set)) return *hit;
    std::uint8_t best = 0xff;
    for_each_bit(x_set, [&](Vertex x) {
      if (best == 1) return;
      std::uint8_t worst = 0;
      bool cut = false;
      masks_.for_each_nontrivial_scc(x_set & ~bit(x), [&](Mask c) {
        worst = std::max(worst, rank_of(c));
        if (1 + worst >= best) {
          cut = true;
          return false;
        }
        return true;
      });
      if (!cut && 1 + worst < best) best = static_cast<std::uint8_t>(1 + worst);
    });
    if (opts_.memo_limit != 0 && memo_.size() >= opts_.memo_limit) {
      throw CapacityError("crank_exact: memo table reached its limit of " +
                          std::to_string(opts_.memo_limit) + " subsets");
    }
    memo_.insert(x_set, best);
    return best;
  }

  /// Witness subtree for X; pivot = smallest vertex attaining f(X).
  EliminationNode build(Mask x_set) {
    const std::uint8_t target = rank_of(x_set);
    for (Vertex x = 0; x < masks_.order(); ++x) {
      if (!(x_set & bit(x))) continue;
      std::uint8_t worst = 0;
      std::vector<Mask> kids;
      masks_.for_each_nontrivial_scc(x_set & ~bit(x), [&](Mask c) {
        kids.push_back(c);
        worst = std::max(worst, rank_of(c));
        return true;
      });
      if (1 + worst != target) continue;
      EliminationNode node;
      node.pivot = x;
      node.scope = VertexSet::from_mask(graph_.order(), x_set);
      for (Mask c : kids) node.children.push_back(build(c));
      return node;
    }
    throw std::logic_error("crank_exact: no pivot attains the memoized value");
  }

  std::size_t memo_size() const noexcept { return memo_.size(); }
  const MaskTable& memo() const noexcept { return memo_; }
  const MaskGraph& masks() const noexcept { return masks_; }

 private:
  const Digraph& graph_;
  MaskGraph masks_;
  ExactOptions opts_;
  MaskTable memo_;
};

}  // namespace detail

/// Exact cycle rank by memoized recursion over strongly connected subsets,
/// together with a minimum-height elimination forest. Requires order <= 64.
inline CrankResult crank_exact(const Digraph& g, ExactOptions opts = {}) {
  auto start = std::chrono::steady_clock::now();
  detail::ExactCycleRank solver(g, opts);
  CrankResult res;
  solver.masks().for_each_nontrivial_scc(solver.masks().all(), [&](Mask c) {
    res.value = std::max<std::size_t>(res.value, solver.rank_of(c));
    res.witness.trees.push_back(solver.build(c));
    return true;
  });
  res.witness = canonicalize(g, std::move(res.witness));
  res.stats.memo_entries = solver.memo_size();
  res.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

struct ScSubsetCount {
  std::uint64_t nontrivial = 0;
  std::uint64_t total = 0;  // includes singletons, excludes the empty set

  friend bool operator==(const ScSubsetCount&, const ScSubsetCount&) = default;
};

/// Counts subsets S with G[S] strongly connected by exhaustive enumeration of
/// all 2^n - 1 nonempty subsets.
inline ScSubsetCount count_sc_subsets(const Digraph& g, std::size_t max_order = 34) {
  if (g.order() > max_order) {
    throw CapacityError("count_sc_subsets: order " + std::to_string(g.order()) +
                        " exceeds limit " + std::to_string(max_order));
  }
  MaskGraph m(g);
  ScSubsetCount out;
  const Mask last = m.all();
  for (Mask s = 1; s != 0 && s <= last; ++s) {
    if (!m.strongly_connected(s)) continue;
    ++out.total;
    if (m.nontrivial(s)) ++out.nontrivial;
    if (s == last) break;
  }
  return out;
}

/// γ^n + n with γ = (2^{d+1} - 1)^{1/(d+1)}: upper bound on the number of
/// strongly connected subsets of an order-n digraph of maximum outdegree d.
inline double sc_subset_bound(std::size_t n, std::size_t d) {
  if (d < 1) throw InputError("sc_subset_bound: outdegree bound must be >= 1");
  const double e = static_cast<double>(d + 1);
  const double gamma = std::pow(std::pow(2.0, e) - 1.0, 1.0 / e);
  return std::pow(gamma, static_cast<double>(n)) + static_cast<double>(n);
}

inline double sc_subset_gamma(std::size_t d) {
  const double e = static_cast<double>(d + 1);
  return std::pow(std::pow(2.0, e) - 1.0, 1.0 / e);
}

}  // namespace cyclerank
