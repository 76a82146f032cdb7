#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "digraph.hpp"
#include "path_decomposition.hpp"

namespace cyclerank {

/// Node (x, X) of a directed elimination tree: pivot x inside scope X. The
/// children cover the nontrivial SCCs of G[X] - x.
struct EliminationNode {
  Vertex pivot = 0;
  VertexSet scope;
  std::vector<EliminationNode> children;

  friend bool operator==(const EliminationNode&, const EliminationNode&) = default;
};

/// One elimination tree per nontrivial SCC of the host digraph. An acyclic
/// digraph has the empty forest.
struct EliminationForest {
  std::vector<EliminationNode> trees;

  bool empty() const noexcept { return trees.empty(); }
  friend bool operator==(const EliminationForest&, const EliminationForest&) = default;
};

inline std::size_t height(const EliminationNode& node) {
  std::size_t h = 0;
  for (const auto& c : node.children) h = std::max(h, height(c));
  return h + 1;
}

/// Nodes on the longest root-to-leaf path; 0 for the empty forest.
inline std::size_t height(const EliminationForest& f) {
  std::size_t h = 0;
  for (const auto& t : f.trees) h = std::max(h, height(t));
  return h;
}

inline std::size_t node_count(const EliminationNode& node) {
  std::size_t c = 1;
  for (const auto& ch : node.children) c += node_count(ch);
  return c;
}

inline std::size_t node_count(const EliminationForest& f) {
  std::size_t c = 0;
  for (const auto& t : f.trees) c += node_count(t);
  return c;
}

namespace detail {

inline std::string node_label(const EliminationNode& n) {
  return "(" + std::to_string(n.pivot) + ", " + n.scope.to_string() + ")";
}

// Compares the scopes of `nodes` against `required`, each used exactly once.
inline void match_scopes(const std::vector<EliminationNode>& nodes,
                         const std::vector<VertexSet>& required,
                         const std::string& where, const std::string& tag,
                         Validation& res) {
  std::vector<bool> used(required.size(), false);
  for (const auto& node : nodes) {
    auto it = std::find(required.begin(), required.end(), node.scope);
    if (it == required.end()) {
      res.violations.push_back(tag + " " + where + ": scope " +
                               node.scope.to_string() +
                               " is not a nontrivial strongly connected component");
      continue;
    }
    auto idx = static_cast<std::size_t>(it - required.begin());
    if (used[idx]) {
      res.violations.push_back(tag + " " + where + ": component " +
                               node.scope.to_string() + " covered twice");
    }
    used[idx] = true;
  }
  for (std::size_t i = 0; i < required.size(); ++i) {
    if (!used[i]) {
      res.violations.push_back(tag + " " + where + ": nontrivial component " +
                               required[i].to_string() + " has no node");
    }
  }
}

inline void validate_node(const Digraph& g, const EliminationNode& node,
                          std::vector<VertexSet>& seen, Validation& res) {
  const std::string label = node_label(node);
  if (node.scope.universe() != g.order()) {
    res.violations.push_back("(a) node " + label + ": scope over wrong vertex range");
    return;
  }
  if (!node.scope.contains(node.pivot)) {
    res.violations.push_back("(a) node " + label + ": pivot not in scope");
  }
  if (std::find(seen.begin(), seen.end(), node.scope) != seen.end()) {
    res.violations.push_back("(c) node " + label + ": scope used by another node");
  } else {
    seen.push_back(node.scope);
  }
  auto required = nontrivial_sccs(g, node.scope.without(node.pivot));
  match_scopes(node.children, required, "at node " + label, "(d)", res);
  for (const auto& c : node.children) validate_node(g, c, seen, res);
}

}  // namespace detail

/// Checks every directed elimination forest condition for G[within], using
/// host vertex ids: root scopes are exactly the nontrivial SCCs of G[within],
/// (a) pivot in scope, (c) scopes pairwise distinct, (d) children are exactly
/// the nontrivial SCCs of G[X] - x.
inline Validation validate_forest(const Digraph& g, const VertexSet& within,
                                  const EliminationForest& f) {
  Validation res;
  detail::match_scopes(f.trees, nontrivial_sccs(g, within), "at roots", "(forest)", res);
  std::vector<VertexSet> seen;
  for (const auto& t : f.trees) {
    if (t.scope.universe() == g.order() && !t.scope.is_subset_of(within)) continue;
    detail::validate_node(g, t, seen, res);
  }
  return res;
}

inline Validation validate_forest(const Digraph& g, const EliminationForest& f) {
  return validate_forest(g, g.vertices(), f);
}

namespace detail {

inline void order_by_components(const Digraph& g, const VertexSet& within,
                                std::vector<EliminationNode>& nodes) {
  if (nodes.size() < 2) return;
  auto parts = scc(g, within).components;
  std::vector<std::size_t> rank(g.order(), parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) rank[v] = i;
  }
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](const EliminationNode& a, const EliminationNode& b) {
                     return rank[a.scope.min()] < rank[b.scope.min()];
                   });
}

inline void canonicalize_node(const Digraph& g, EliminationNode& node) {
  order_by_components(g, node.scope.without(node.pivot), node.children);
  for (auto& c : node.children) canonicalize_node(g, c);
}

}  // namespace detail

/// Sorts siblings into the topological order of their scopes (ties by the
/// smallest vertex), making serialization canonical. `within` is the vertex
/// set the forest was built for.
inline EliminationForest canonicalize(const Digraph& g, const VertexSet& within,
                                      EliminationForest f) {
  detail::order_by_components(g, within, f.trees);
  for (auto& t : f.trees) detail::canonicalize_node(g, t);
  return f;
}

inline EliminationForest canonicalize(const Digraph& g, EliminationForest f) {
  return canonicalize(g, g.vertices(), std::move(f));
}

/// Relabels a forest built for sub.graph into host vertex ids.
inline EliminationForest lift(const EliminationForest& f, const InducedSubgraph& sub,
                              std::size_t host_order) {
  auto lift_node = [&](auto& self, const EliminationNode& n) -> EliminationNode {
    EliminationNode out;
    out.pivot = sub.to_host[n.pivot];
    out.scope = sub.lift(n.scope, host_order);
    for (const auto& c : n.children) out.children.push_back(self(self, c));
    return out;
  };
  EliminationForest out;
  for (const auto& t : f.trees) out.trees.push_back(lift_node(lift_node, t));
  return out;
}

// ---------------------------------------------------------------------------
// Text format: one node per line, "<pivot> {<scope>}", indented two spaces
// per level of depth.

namespace detail {

inline void write_node(const EliminationNode& n, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += std::to_string(n.pivot) + ' ' + n.scope.to_string() + '\n';
  for (const auto& c : n.children) write_node(c, depth + 1, out);
}

}  // namespace detail

inline std::string serialize_forest(const EliminationForest& f) {
  std::string out;
  for (const auto& t : f.trees) detail::write_node(t, 0, out);
  return out;
}

inline EliminationForest parse_forest(std::istream& in, std::size_t universe) {
  EliminationForest f;
  std::vector<EliminationNode*> path;  // open nodes, one per depth
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (detail::strip_comment(raw).empty()) continue;
    std::size_t indent = raw.find_first_not_of(' ');
    if (raw[indent] == '\t') throw ParseError(lineno, "tabs are not allowed in indentation");
    if (indent % 2 != 0) throw ParseError(lineno, "indentation must be a multiple of two");
    std::size_t depth = indent / 2;
    if (depth > path.size()) throw ParseError(lineno, "node is indented too deep");
    std::string_view body = detail::strip_comment(raw);
    auto space = body.find(' ');
    if (space == std::string_view::npos) {
      throw ParseError(lineno, "expected '<pivot> {<scope>}'");
    }
    auto pivot = detail::parse_index(body.substr(0, space));
    if (!pivot) throw ParseError(lineno, "invalid pivot");
    EliminationNode node;
    node.pivot = *pivot;
    try {
      node.scope = parse_vertex_set(body.substr(space + 1), universe);
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
    path.resize(depth);
    auto& siblings = depth == 0 ? f.trees : path.back()->children;
    siblings.push_back(std::move(node));
    path.push_back(&siblings.back());
  }
  return f;
}

inline EliminationForest parse_forest(std::string_view text, std::size_t universe) {
  std::istringstream in{std::string(text)};
  return parse_forest(in, universe);
}

inline std::string forest_to_dot(const EliminationForest& f) {
  std::string out = "digraph {\n";
  std::size_t next = 0;
  auto visit = [&](auto& self, const EliminationNode& n) -> std::size_t {
    std::size_t id = next++;
    out += "  n" + std::to_string(id) + " [label=\"" + std::to_string(n.pivot) +
           " " + n.scope.to_string() + "\"];\n";
    for (const auto& c : n.children) {
      std::size_t cid = self(self, c);
      out += "  n" + std::to_string(id) + " -> n" + std::to_string(cid) + ";\n";
    }
    return id;
  };
  for (const auto& t : f.trees) visit(visit, t);
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Forest -> directed path decomposition

namespace detail {

inline void decompose_into(const Digraph& g, const VertexSet& within,
                           const std::vector<EliminationNode>& trees,
                           std::vector<VertexSet>& bags) {
  for (const auto& comp : scc(g, within).components) {
    if (!is_nontrivial_component(g, comp)) {
      bags.push_back(comp);
      continue;
    }
    auto it = std::find_if(trees.begin(), trees.end(),
                           [&](const EliminationNode& t) { return t.scope == comp; });
    std::vector<VertexSet> sub;
    decompose_into(g, comp.without(it->pivot), it->children, sub);
    if (sub.empty()) sub.emplace_back(g.order());
    for (auto& b : sub) {
      b.insert(it->pivot);
      bags.push_back(std::move(b));
    }
  }
}

}  // namespace detail

/// Builds a directed path decomposition of width at most height(f): the SCCs
/// are laid out in topological order, each nontrivial one by decomposing
/// G[C] - x recursively and adding the pivot x to every resulting bag.
inline PathDecomposition forest_to_path_decomposition(const Digraph& g,
                                                      const EliminationForest& f) {
  if (auto v = validate_forest(g, f); !v.ok()) {
    throw InputError("forest_to_path_decomposition: invalid forest: " +
                     v.violations.front());
  }
  PathDecomposition d;
  detail::decompose_into(g, g.vertices(), f.trees, d.bags);
  return d;
}

}  // namespace cyclerank
