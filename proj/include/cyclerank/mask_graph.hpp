#pragma once

#include <array>
#include <bit>
#include <string>

#include "digraph.hpp"

namespace cyclerank {

/// Bit-parallel adjacency for digraphs of order at most 64. Every set
/// operation used by the exponential algorithms runs on single words here.
class MaskGraph {
 public:
  explicit MaskGraph(const Digraph& g) : n_(g.order()) {
    if (!g.fits_mask()) {
      throw CapacityError("exact algorithms support at most 64 vertices, got " +
                          std::to_string(g.order()));
    }
    for (Vertex v = 0; v < n_; ++v) {
      out_[v] = g.out_mask(v);
      in_[v] = g.in_mask(v);
    }
  }

  std::size_t order() const noexcept { return n_; }
  Mask all() const noexcept { return low_bits(n_); }
  Mask out(Vertex v) const noexcept { return out_[v]; }
  Mask in(Vertex v) const noexcept { return in_[v]; }
  bool has_loop(Vertex v) const noexcept { return (out_[v] >> v) & 1U; }

  /// Vertices of `within` reachable from `from` inside G[within].
  Mask forward_closure(Mask from, Mask within) const noexcept {
    Mask reach = from & within, frontier = reach;
    while (frontier) {
      Vertex u = static_cast<Vertex>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      Mask nb = out_[u] & within & ~reach;
      reach |= nb;
      frontier |= nb;
    }
    return reach;
  }

  Mask backward_closure(Mask from, Mask within) const noexcept {
    Mask reach = from & within, frontier = reach;
    while (frontier) {
      Vertex u = static_cast<Vertex>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      Mask nb = in_[u] & within & ~reach;
      reach |= nb;
      frontier |= nb;
    }
    return reach;
  }

  /// Strongly connected component of v in G[within] (v must be in within).
  Mask component_of(Vertex v, Mask within) const noexcept {
    Mask fwd = forward_closure(bit(v), within);
    return backward_closure(bit(v), fwd);
  }

  bool nontrivial(Mask component) const noexcept {
    return std::popcount(component) >= 2 ||
           (component != 0 &&
            has_loop(static_cast<Vertex>(std::countr_zero(component))));
  }

  bool strongly_connected(Mask s) const noexcept {
    if (s == 0) return false;
    Vertex v = static_cast<Vertex>(std::countr_zero(s));
    return forward_closure(bit(v), s) == s && backward_closure(bit(v), s) == s;
  }

  /// Calls fn(component) for each nontrivial SCC of G[within]; stops early
  /// when fn returns false. Order: by smallest contained vertex.
  template <typename Fn>
  void for_each_nontrivial_scc(Mask within, Fn&& fn) const {
    Mask rest = within;
    while (rest) {
      Vertex v = static_cast<Vertex>(std::countr_zero(rest));
      Mask c = component_of(v, rest);
      rest &= ~c;
      if (nontrivial(c) && !fn(c)) return;
    }
  }

  bool acyclic(Mask within) const {
    bool found = false;
    for_each_nontrivial_scc(within, [&](Mask) {
      found = true;
      return false;
    });
    return !found;
  }

 private:
  std::size_t n_;
  std::array<Mask, kMaskBits> out_{};
  std::array<Mask, kMaskBits> in_{};
};

}  // namespace cyclerank
