#pragma once

#include <algorithm>
#include <cctype>
#include <array>
#include <charconv>
#include <functional>
#include <istream>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vertex_set.hpp"

namespace cyclerank {

using Edge = std::pair<Vertex, Vertex>;

/// Finite digraph on vertices 0..n-1 with a set of ordered-pair edges. Loops
/// are allowed, parallel edges are not. Immutable once constructed.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : n_(n), out_(n), in_(n) { build_masks(); }

  /// Repeated edges are collapsed; out-of-range endpoints throw InputError.
  Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), out_(n), in_(n) {
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n) {
        throw InputError("edge (" + std::to_string(u) + "," +
                         std::to_string(v) + ") outside vertex range [0, " +
                         std::to_string(n) + ")");
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (auto& l : in_) std::sort(l.begin(), l.end());
    build_masks();
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    return u < n_ && std::binary_search(out_[u].begin(), out_[u].end(), v);
  }
  bool has_loop(Vertex v) const { return has_edge(v, v); }
  bool has_loops() const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.first == e.second; });
  }

  VertexSet vertices() const { return VertexSet::full(n_); }

  bool fits_mask() const noexcept { return n_ <= kMaskBits; }
  /// Adjacency bitmasks, only meaningful when fits_mask().
  Mask out_mask(Vertex v) const { return out_masks_[v]; }
  Mask in_mask(Vertex v) const { return in_masks_[v]; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_masks() {
    if (!fits_mask()) return;
    out_masks_.assign(n_, 0);
    in_masks_.assign(n_, 0);
    for (const auto& [u, v] : edges_) {
      out_masks_[u] |= bit(v);
      in_masks_[v] |= bit(u);
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<Mask> out_masks_;
  std::vector<Mask> in_masks_;
};

/// Ordered list of strongly connected components.
struct SccPartition {
  std::vector<VertexSet> components;

  std::size_t size() const noexcept { return components.size(); }
};

namespace detail {

// Iterative Tarjan restricted to `within`; returns component ids per vertex
// (npos outside `within`) and the number of components.
inline std::pair<std::vector<std::size_t>, std::size_t> tarjan(
    const Digraph& g, const VertexSet& within) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const std::size_t n = g.order();
  std::vector<std::size_t> index(n, npos), low(n, 0), comp(n, npos);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;
  std::size_t counter = 0, ncomp = 0;

  for (Vertex root : within) {
    if (index[root] != npos) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto succ = g.out(v);
      if (pos < succ.size()) {
        Vertex w = succ[pos++];
        if (!within.contains(w)) continue;
        if (index[w] == npos) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      Vertex done = v;
      call.pop_back();
      if (!call.empty()) {
        Vertex parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
    }
  }
  return {std::move(comp), ncomp};
}

}  // namespace detail

/// Strongly connected components of G[within], topologically ordered; among
/// the valid orders the one picking the smallest minimum vertex id first.
inline SccPartition scc(const Digraph& g, const VertexSet& within) {
  auto [comp, ncomp] = detail::tarjan(g, within);
  std::vector<VertexSet> parts(ncomp, VertexSet(g.order()));
  std::vector<Vertex> min_vertex(ncomp, g.order());
  for (Vertex v : within) {
    parts[comp[v]].insert(v);
    min_vertex[comp[v]] = std::min(min_vertex[comp[v]], v);
  }
  // Kahn on the condensation with a min-heap keyed on the smallest vertex.
  std::vector<std::vector<std::size_t>> succ(ncomp);
  std::vector<std::size_t> indeg(ncomp, 0);
  for (Vertex u : within) {
    for (Vertex v : g.out(u)) {
      if (!within.contains(v) || comp[u] == comp[v]) continue;
      succ[comp[u]].push_back(comp[v]);
      ++indeg[comp[v]];
    }
  }
  using Item = std::pair<Vertex, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (indeg[c] == 0) ready.emplace(min_vertex[c], c);
  }
  SccPartition out;
  out.components.reserve(ncomp);
  while (!ready.empty()) {
    auto [_, c] = ready.top();
    ready.pop();
    out.components.push_back(std::move(parts[c]));
    for (std::size_t d : succ[c]) {
      if (--indeg[d] == 0) ready.emplace(min_vertex[d], d);
    }
  }
  return out;
}

inline SccPartition scc(const Digraph& g) { return scc(g, g.vertices()); }

/// A strongly connected set is nontrivial when it induces at least one edge.
inline bool is_nontrivial_component(const Digraph& g, const VertexSet& c) {
  if (c.size() >= 2) return true;
  return !c.empty() && g.has_loop(c.min());
}

inline std::vector<VertexSet> nontrivial_sccs(const Digraph& g,
                                              const VertexSet& within) {
  std::vector<VertexSet> out;
  for (auto& c : scc(g, within).components) {
    if (is_nontrivial_component(g, c)) out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<VertexSet> nontrivial_sccs(const Digraph& g) {
  return nontrivial_sccs(g, g.vertices());
}

inline bool is_acyclic(const Digraph& g, const VertexSet& within) {
  return nontrivial_sccs(g, within).empty();
}

inline bool is_acyclic(const Digraph& g) { return is_acyclic(g, g.vertices()); }

/// True iff G[s] is strongly connected (the empty set is not).
inline bool is_strongly_connected(const Digraph& g, const VertexSet& s) {
  return !s.empty() && scc(g, s).size() == 1;
}

/// Induced subdigraph plus the relabeling back to the host graph.
struct InducedSubgraph {
  Digraph graph;
  std::vector<Vertex> to_host;  // new id -> host id, ascending

  VertexSet lift(const VertexSet& local, std::size_t host_order) const {
    VertexSet s(host_order);
    for (Vertex v : local) s.insert(to_host[v]);
    return s;
  }
};

inline InducedSubgraph induced(const Digraph& g, const VertexSet& u) {
  if (u.universe() != g.order()) {
    throw InputError("vertex set universe does not match digraph order");
  }
  InducedSubgraph out;
  out.to_host = u.to_vector();
  std::vector<Vertex> local(g.order(), g.order());
  for (std::size_t i = 0; i < out.to_host.size(); ++i) local[out.to_host[i]] = i;
  std::vector<Edge> edges;
  for (Vertex a : out.to_host) {
    for (Vertex b : g.out(a)) {
      if (u.contains(b)) edges.emplace_back(local[a], local[b]);
    }
  }
  out.graph = Digraph(out.to_host.size(), std::move(edges));
  return out;
}

/// Convenience: subgraph with vertex list given explicitly; checks range.
inline InducedSubgraph induced(const Digraph& g, std::span<const Vertex> u) {
  VertexSet s(g.order());
  for (Vertex v : u) s.insert(v);
  return induced(g, s);
}

struct Degree {
  std::size_t out = 0;
  std::size_t total = 0;  // distinct neighbours, either direction

  friend bool operator==(const Degree&, const Degree&) = default;
};

inline std::vector<Degree> degrees(const Digraph& g) {
  std::vector<Degree> d(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    auto o = g.out(v);
    auto i = g.in(v);
    d[v].out = o.size();
    std::vector<Vertex> nb;
    std::set_union(o.begin(), o.end(), i.begin(), i.end(),
                   std::back_inserter(nb));
    d[v].total = nb.size();
  }
  return d;
}

// ---------------------------------------------------------------------------
// Text I/O

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
  if (auto p = line.find('#'); p != std::string_view::npos) {
    line = line.substr(0, p);
  }
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
    line.remove_prefix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
    line.remove_suffix(1);
  return line;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Parses a non-negative decimal integer; nullopt on anything else.
inline std::optional<std::size_t> parse_index(std::string_view tok) {
  if (tok.empty() || tok.front() == '-' || tok.front() == '+') return std::nullopt;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace detail

struct ParsedDigraph {
  Digraph graph;
  std::size_t duplicate_edges = 0;
};

/// Edge-list format:
///   digraph <n>
///   <u> <v>
/// '#' starts a comment; blank lines are ignored.
inline ParsedDigraph parse_digraph_text(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto tok = detail::split_ws(line);
    if (!n) {
      if (tok.size() != 2 || tok[0] != "digraph") {
        throw ParseError(lineno, "expected header 'digraph <n>'");
      }
      n = detail::parse_index(tok[1]);
      if (!n) throw ParseError(lineno, "invalid vertex count '" + std::string(tok[1]) + "'");
      continue;
    }
    if (tok.size() != 2) throw ParseError(lineno, "expected '<u> <v>'");
    for (auto t : tok) {
      if (!t.empty() && t.front() == '-') {
        throw ParseError(lineno, "negative vertex index '" + std::string(t) + "'");
      }
    }
    auto u = detail::parse_index(tok[0]);
    auto v = detail::parse_index(tok[1]);
    if (!u || !v) throw ParseError(lineno, "malformed edge '" + std::string(line) + "'");
    if (*u >= *n || *v >= *n) {
      throw ParseError(lineno, "vertex index out of range in '" + std::string(line) +
                                   "' (n = " + std::to_string(*n) + ")");
    }
    edges.emplace_back(*u, *v);
  }
  if (!n) throw ParseError(lineno, "missing 'digraph <n>' header");
  ParsedDigraph out;
  std::size_t given = edges.size();
  out.graph = Digraph(*n, std::move(edges));
  out.duplicate_edges = given - out.graph.edge_count();
  return out;
}

inline Digraph parse_digraph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_digraph_text(in).graph;
}

inline std::string serialize_digraph(const Digraph& g) {
  std::ostringstream out;
  out << "digraph " << g.order() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline std::string to_dot(const Digraph& g) {
  std::ostringstream out;
  out << "digraph {\n";
  for (Vertex v = 0; v < g.order(); ++v) out << "  " << v << ";\n";
  for (const auto& [u, v] : g.edges()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

/// Parses "{1,4,7}" (whitespace tolerated) over the given universe.
inline VertexSet parse_vertex_set(std::string_view text, std::size_t universe) {
  auto s = detail::strip_comment(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw InputError("expected '{v1,v2,...}', got '" + std::string(text) + "'");
  }
  s = s.substr(1, s.size() - 2);
  VertexSet out(universe);
  while (!s.empty()) {
    auto comma = s.find(',');
    auto item = detail::strip_comment(s.substr(0, comma));
    auto v = detail::parse_index(item);
    if (!v) throw InputError("invalid vertex '" + std::string(item) + "'");
    if (*v >= universe) {
      throw InputError("vertex " + std::to_string(*v) + " outside range [0, " +
                       std::to_string(universe) + ")");
    }
    out.insert(*v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Small named graphs used throughout the tests and the CLI examples.

inline Digraph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Digraph(n, std::move(e));
}

inline Digraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Digraph(n, std::move(e));
}

/// Complete digraph without loops.
inline Digraph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) e.emplace_back(u, v);
  return Digraph(n, std::move(e));
}

/// G - s.
inline InducedSubgraph remove_vertices(const Digraph& g, const VertexSet& s) {
  return induced(g, g.vertices() - s);
}

}  // namespace cyclerank
