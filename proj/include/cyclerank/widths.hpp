#pragma once

#include <bit>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cycle_rank.hpp"
#include "digraph.hpp"
#include "mask_graph.hpp"
#include "path_decomposition.hpp"

namespace cyclerank {

// ---------------------------------------------------------------------------
// Directed pathwidth

struct DpwResult {
  Width width;
  PathDecomposition decomposition;
  std::vector<Vertex> layout;  // vertex order the bags were built from
};

namespace detail {

// Vertices placed in `placed` that still wait for an unplaced in-neighbour.
inline Mask open_vertices(const MaskGraph& g, Mask placed) {
  Mask open = 0;
  for_each_bit(placed, [&](Vertex w) {
    if (g.in(w) & ~placed) open |= bit(w);
  });
  return open;
}

}  // namespace detail

/// Exact directed pathwidth via a DP over layouts. Placing vertices one at a
/// time, the bag for the next vertex v is {v} plus every placed vertex that
/// still has an unplaced in-neighbour; the width of a layout is the largest
/// such open set, minimised over all layouts.
inline DpwResult dpw_exact(const Digraph& g, std::size_t max_order = 20) {
  if (g.order() > max_order) {
    throw CapacityError("dpw_exact: order " + std::to_string(g.order()) +
                        " exceeds limit " + std::to_string(max_order));
  }
  DpwResult res;
  const std::size_t n = g.order();
  if (n == 0) {
    res.width = {0, true};
    return res;
  }
  MaskGraph m(g);
  const Mask all = m.all();
  // best[P] = min over completions of the max open-set size from P onwards.
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0);
  for (Mask p = all; ; --p) {
    if (p != all) {
      std::uint8_t here = static_cast<std::uint8_t>(std::popcount(detail::open_vertices(m, p)));
      std::uint8_t next = 0xff;
      for_each_bit(all & ~p, [&](Vertex v) {
        next = std::min(next, best[p | bit(v)]);
      });
      best[p] = std::max(here, next);
    }
    if (p == 0) break;
  }
  Mask placed = 0;
  while (placed != all) {
    Vertex pick = n;
    for_each_bit(all & ~placed, [&](Vertex v) {
      if (pick == n && best[placed | bit(v)] <= best[0]) pick = v;
    });
    VertexSet bag = VertexSet::from_mask(n, detail::open_vertices(m, placed) | bit(pick));
    res.decomposition.bags.push_back(std::move(bag));
    res.layout.push_back(pick);
    placed |= bit(pick);
  }
  res.width = width(res.decomposition);
  return res;
}

// ---------------------------------------------------------------------------
// Weak balanced separators

/// Every SCC of G[U \ S] has at most ceil(|U \ S| / 2) vertices.
inline bool is_weak_balanced_separator(const Digraph& g, const VertexSet& u,
                                       const VertexSet& s) {
  if (u.universe() != g.order() || s.universe() != g.order()) {
    throw InputError("separator check: vertex set universe does not match digraph");
  }
  if (!s.is_subset_of(u)) throw InputError("separator check: S is not a subset of U");
  VertexSet rest = u - s;
  std::size_t cap = (rest.size() + 1) / 2;
  for (const auto& c : scc(g, rest).components) {
    if (c.size() > cap) return false;
  }
  return true;
}

struct SeparatorCertificate {
  VertexSet target;
  VertexSet separator;
};

namespace detail {

inline bool balanced_masks(const MaskGraph& m, Mask u, Mask s) {
  Mask rest = u & ~s;
  int cap = (std::popcount(rest) + 1) / 2;
  while (rest) {
    Vertex v = static_cast<Vertex>(std::countr_zero(rest));
    Mask c = m.component_of(v, rest);
    if (std::popcount(c) > cap) return false;
    rest &= ~c;
  }
  return true;
}

// Calls fn(S) for the size-k subsets of `pool` in lexicographic order of
// their ascending element lists; stops when fn returns true.
template <typename Fn>
bool for_each_k_subset(Mask pool, std::size_t k, Fn&& fn) {
  std::vector<Vertex> items;
  for_each_bit(pool, [&](Vertex v) { items.push_back(v); });
  if (k > items.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask s = 0;
    for (std::size_t i : idx) s |= bit(items[i]);
    if (fn(s)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Smallest separator of size <= max_size for U (lexicographic tie-break).
inline std::optional<Mask> min_separator_masks(const MaskGraph& m, Mask u,
                                               std::size_t max_size) {
  const auto bound = std::min<std::size_t>(max_size, std::popcount(u));
  for (std::size_t k = 0; k <= bound; ++k) {
    std::optional<Mask> found;
    for_each_k_subset(u, k, [&](Mask s) {
      if (!balanced_masks(m, u, s)) return false;
      found = s;
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

inline void check_order(const Digraph& g, std::size_t max_order, const char* what) {
  if (g.order() > max_order) {
    throw CapacityError(std::string(what) + ": order " + std::to_string(g.order()) +
                        " exceeds limit " + std::to_string(max_order));
  }
}

}  // namespace detail

/// Minimum-cardinality weak balanced separator for U; among those of minimum
/// size, the lexicographically smallest.
inline SeparatorCertificate min_weak_separator(const Digraph& g, const VertexSet& u,
                                               std::size_t max_order = 15) {
  detail::check_order(g, max_order, "min_weak_separator");
  if (u.universe() != g.order()) {
    throw InputError("min_weak_separator: vertex set universe does not match digraph");
  }
  MaskGraph m(g);
  auto s = detail::min_separator_masks(m, u.mask(), g.order());
  return {u, VertexSet::from_mask(g.order(), *s)};
}

struct SnumResult {
  std::size_t value = 0;
  SeparatorCertificate witness;  // a U whose minimum separator has size `value`
};

/// Weak separator number: max over U ⊆ V of the minimum weak balanced
/// separator size. Targets are visited by decreasing cardinality and only
/// separators larger than the running maximum are searched for.
inline SnumResult snum_exact_with_witness(const Digraph& g, std::size_t max_order = 15) {
  detail::check_order(g, max_order, "snum_exact");
  const std::size_t n = g.order();
  MaskGraph m(g);
  SnumResult res;
  res.witness = {VertexSet(n), VertexSet(n)};
  for (std::size_t size = n; size >= 1; --size) {
    // A target of this size never needs more than size - 1 deletions.
    if (size - 1 <= res.value) break;
    detail::for_each_k_subset(m.all(), size, [&](Mask u) {
      if (detail::min_separator_masks(m, u, res.value)) return false;
      auto s = detail::min_separator_masks(m, u, size);
      res.value = static_cast<std::size_t>(std::popcount(*s));
      res.witness = {VertexSet::from_mask(n, u), VertexSet::from_mask(n, *s)};
      return size - 1 <= res.value;
    });
  }
  return res;
}

inline std::size_t snum_exact(const Digraph& g, std::size_t max_order = 15) {
  return snum_exact_with_witness(g, max_order).value;
}

// ---------------------------------------------------------------------------
// Recurrence and inequality chain

/// R_k(n) = k + R_k(ceil((n - k) / 2)), with R_k(r) = r for r <= k.
inline std::size_t rk(std::size_t k, std::size_t n) {
  if (k < 1 || n < 1) throw InputError("rk: k and n must both be >= 1");
  std::size_t acc = 0;
  while (n > k) {
    acc += k;
    n = (n - k + 1) / 2;
  }
  return acc + n;
}

struct BoundsReport {
  std::size_t snum = 0;
  std::size_t dpw = 0;
  std::size_t crank = 0;
  std::optional<std::size_t> rk_minus_1;  // only for snum >= 1
  std::optional<double> closed_form;      // k * log2(n / k) - 1, informational
  bool chain_ok = false;
};

/// Computes snum, dpw and crank exactly and checks
///   snum <= dpw <= crank <= R_k(n) - 1   (k = snum >= 1)
///   crank = dpw = 0                      (k = 0).
/// Rejects digraphs with loops.
inline BoundsReport check_bounds(const Digraph& g, std::size_t snum_limit = 15,
                                 std::size_t dpw_limit = 20) {
  if (g.has_loops()) throw InputError("bounds: the inequality chain needs a loop-free digraph");
  BoundsReport r;
  r.snum = snum_exact(g, snum_limit);
  r.dpw = dpw_exact(g, dpw_limit).width.value;
  r.crank = crank_exact(g).value;
  if (r.snum >= 1) {
    r.rk_minus_1 = rk(r.snum, g.order()) - 1;
    r.closed_form = static_cast<double>(r.snum) *
                        std::log2(static_cast<double>(g.order()) /
                                  static_cast<double>(r.snum)) -
                    1.0;
    r.chain_ok = r.snum <= r.dpw && r.dpw <= r.crank && r.crank <= *r.rk_minus_1;
  } else {
    r.chain_ok = r.dpw == 0 && r.crank == 0;
  }
  return r;
}

}  // namespace cyclerank
