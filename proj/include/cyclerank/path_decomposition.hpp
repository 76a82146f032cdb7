#pragma once

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "digraph.hpp"

namespace cyclerank {

/// Outcome of a structural check: ok() iff no violations were found. Each
/// violation message starts with the failing condition's tag.
struct Validation {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

/// Directed path decomposition: a sequence of bags W_1..W_r.
struct PathDecomposition {
  std::vector<VertexSet> bags;

  friend bool operator==(const PathDecomposition&, const PathDecomposition&) = default;
};

struct Width {
  std::size_t value = 0;
  bool empty = false;  // no nonempty bag; "max size - 1" is undefined, value is 0

  friend bool operator==(const Width&, const Width&) = default;
};

inline Width width(const PathDecomposition& d) {
  std::size_t largest = 0;
  for (const auto& b : d.bags) largest = std::max(largest, b.size());
  if (largest == 0) return {0, true};
  return {largest - 1, false};
}

/// Checks (a) coverage, (b) W_i ∩ W_k ⊆ W_j for i<j<k and (c) every edge
/// (u,v) shares a bag or has u in a strictly earlier bag than some bag of v.
inline Validation validate_path_decomposition(const Digraph& g,
                                              const PathDecomposition& d) {
  Validation res;
  const std::size_t n = g.order();
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> first(n, npos), last(n, npos);
  for (std::size_t i = 0; i < d.bags.size(); ++i) {
    if (d.bags[i].universe() != n) {
      res.violations.push_back("bag " + std::to_string(i) +
                               ": universe does not match digraph order");
      return res;
    }
    for (Vertex v : d.bags[i]) {
      if (first[v] == npos) first[v] = i;
      last[v] = i;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (first[v] == npos) {
      res.violations.push_back("(a) vertex " + std::to_string(v) + " is in no bag");
      continue;
    }
    for (std::size_t j = first[v] + 1; j < last[v]; ++j) {
      if (!d.bags[j].contains(v)) {
        res.violations.push_back("(b) vertex " + std::to_string(v) + " in bags " +
                                 std::to_string(first[v]) + " and " +
                                 std::to_string(last[v]) + " but not in bag " +
                                 std::to_string(j));
        break;
      }
    }
  }
  for (const auto& [u, v] : g.edges()) {
    if (first[u] == npos || first[v] == npos) continue;
    bool share = false;
    for (std::size_t i = 0; i < d.bags.size() && !share; ++i) {
      share = d.bags[i].contains(u) && d.bags[i].contains(v);
    }
    if (!share && !(first[u] < last[v])) {
      res.violations.push_back("(c) edge (" + std::to_string(u) + "," +
                               std::to_string(v) +
                               ") has no common bag and its tail never precedes its head");
    }
  }
  return res;
}

/// Equivalent decomposition in which consecutive bags differ by exactly one
/// vertex: between W_i and W_{i+1} the departing vertices are dropped one at a
/// time, then the arriving ones added. Throws InputError if d is invalid for g.
inline PathDecomposition normalize(const Digraph& g, const PathDecomposition& d) {
  if (auto v = validate_path_decomposition(g, d); !v.ok()) {
    throw InputError("normalize: invalid decomposition: " + v.violations.front());
  }
  PathDecomposition out;
  for (const auto& bag : d.bags) {
    if (out.bags.empty()) {
      out.bags.push_back(bag);
      continue;
    }
    VertexSet cur = out.bags.back();
    for (Vertex v : cur - bag) {
      cur.erase(v);
      out.bags.push_back(cur);
    }
    for (Vertex v : bag - cur) {
      cur.insert(v);
      out.bags.push_back(cur);
    }
  }
  return out;
}

/// One bag per line: "{v1,v2,...}".
inline std::string serialize_path_decomposition(const PathDecomposition& d) {
  std::string out;
  for (const auto& b : d.bags) out += b.to_string() + '\n';
  return out;
}

inline PathDecomposition parse_path_decomposition(std::istream& in,
                                                  std::size_t universe) {
  PathDecomposition d;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    try {
      d.bags.push_back(parse_vertex_set(line, universe));
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return d;
}

}  // namespace cyclerank
