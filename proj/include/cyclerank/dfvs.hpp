#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "digraph.hpp"
#include "mask_graph.hpp"

namespace cyclerank {

/// True iff G - S is acyclic.
inline bool is_dfvs(const Digraph& g, const VertexSet& s) {
  if (s.universe() != g.order()) {
    throw InputError("is_dfvs: vertex set universe does not match digraph order");
  }
  return is_acyclic(g, g.vertices() - s);
}

struct EnumerationOptions {
  /// Stop with CapacityError after this many sets (0 = unlimited).
  std::size_t cap = 0;
};

/// Thrown when an enumeration exceeds its cap; carries the partial count.
class EnumerationCapExceeded : public CapacityError {
 public:
  explicit EnumerationCapExceeded(std::size_t count)
      : CapacityError("enumeration cap of " + std::to_string(count) +
                      " sets reached before completion"),
        count_(count) {}
  std::size_t partial_count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

namespace detail {

// Backtracking over vertices in ascending order, deciding include/exclude
// while keeping the included set acyclic. A branch is cut as soon as some
// excluded vertex could be added to every completion of it, since no maximal
// set can extend such a branch. Emits each maximal acyclic set once.
class MaximalAcyclicEnumerator {
 public:
  MaximalAcyclicEnumerator(const Digraph& g, std::function<bool(Mask)> emit)
      : m_(g), n_(g.order()), emit_(std::move(emit)) {
    for (Vertex v = 0; v < n_; ++v) {
      if (m_.has_loop(v)) forced_ |= bit(v);
    }
  }

  Mask forced() const noexcept { return forced_; }

  void run() { recurse(0, 0, 0); }

 private:
  // Undecided vertices are v >= next that are not forced out.
  Mask undecided(Vertex next) const {
    return m_.all() & ~low_bits(next) & ~forced_;
  }

  bool viable(Mask in, Mask out, Vertex next) const {
    const Mask open = undecided(next);
    bool ok = true;
    for_each_bit(out, [&](Vertex v) {
      if (ok && m_.acyclic(in | open | bit(v))) ok = false;
    });
    return ok;
  }

  bool recurse(Mask in, Mask out, Vertex next) {
    while (next < n_ && (forced_ & bit(next))) ++next;
    if (next == n_) return emit_(in);
    const Mask with = in | bit(next);
    if (m_.acyclic(with)) {
      if (!recurse(with, out, next + 1)) return false;
      // Excluding next is only useful if next can still be blocked.
      const Mask without_out = out | bit(next);
      if (!m_.acyclic(in | undecided(next + 1) | bit(next)) &&
          viable(in, without_out, next + 1)) {
        if (!recurse(in, without_out, next + 1)) return false;
      }
      return true;
    }
    const Mask without_out = out | bit(next);
    if (viable(in, without_out, next + 1)) return recurse(in, without_out, next + 1);
    return true;
  }

  MaskGraph m_;
  std::size_t n_;
  std::function<bool(Mask)> emit_;
  Mask forced_ = 0;
};

inline bool mask_lex_less(Mask a, Mask b) {
  while (a && b) {
    Mask la = a & (~a + 1), lb = b & (~b + 1);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

}  // namespace detail

/// All inclusion-maximal A ⊆ V with G[A] acyclic, sorted lexicographically by
/// their ascending element lists. Requires order <= 64.
inline std::vector<VertexSet> maximal_acyclic_subsets(const Digraph& g,
                                                      EnumerationOptions opts = {}) {
  std::vector<Mask> found;
  detail::MaximalAcyclicEnumerator e(g, [&](Mask a) {
    found.push_back(a);
    if (opts.cap != 0 && found.size() >= opts.cap) {
      throw EnumerationCapExceeded(found.size());
    }
    return true;
  });
  e.run();
  std::sort(found.begin(), found.end(), detail::mask_lex_less);
  std::vector<VertexSet> out;
  out.reserve(found.size());
  for (Mask a : found) out.push_back(VertexSet::from_mask(g.order(), a));
  return out;
}

/// Minimal directed feedback vertex sets: complements of the maximal acyclic
/// subsets, sorted lexicographically.
inline std::vector<VertexSet> minimal_dfvs_enumerate(const Digraph& g,
                                                     EnumerationOptions opts = {}) {
  std::vector<VertexSet> out;
  for (const auto& a : maximal_acyclic_subsets(g, opts)) out.push_back(g.vertices() - a);
  std::sort(out.begin(), out.end(),
            [](const VertexSet& a, const VertexSet& b) { return lex_less(a, b); });
  return out;
}

struct DfvsResult {
  VertexSet minimum_set;
  std::size_t minimum_size = 0;
  VertexSet forced;  // vertices with loops, in every feedback set
  std::size_t maximal_acyclic_count = 0;
};

/// Minimum DFVS by streaming over the maximal acyclic subsets and keeping the
/// largest (ties: lexicographically smallest complement).
inline DfvsResult min_dfvs(const Digraph& g) {
  const Mask all = low_bits(g.order());
  std::optional<Mask> best;
  std::size_t count = 0;
  detail::MaximalAcyclicEnumerator e(g, [&](Mask a) {
    ++count;
    Mask s = all & ~a;
    if (!best || std::popcount(s) < std::popcount(*best) ||
        (std::popcount(s) == std::popcount(*best) && detail::mask_lex_less(s, *best))) {
      best = s;
    }
    return true;
  });
  e.run();
  DfvsResult res;
  res.minimum_set = VertexSet::from_mask(g.order(), best.value_or(0));
  res.minimum_size = res.minimum_set.size();
  res.forced = VertexSet::from_mask(g.order(), e.forced());
  res.maximal_acyclic_count = count;
  return res;
}

}  // namespace cyclerank
