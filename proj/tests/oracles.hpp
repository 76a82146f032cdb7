#pragma once

// Reference implementations used only by the tests. They work on plain
// adjacency matrices and share no code with the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cyclerank/digraph.hpp"
#include "cyclerank/regex.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix matrix_of(const cyclerank::Digraph& g) {
  Matrix m(g.order(), std::vector<bool>(g.order(), false));
  for (const auto& [u, v] : g.edges()) m[u][v] = true;
  return m;
}

// Reachability closure restricted to the vertices in `keep` (Warshall).
inline Matrix closure(const Matrix& m, std::uint64_t keep) {
  const std::size_t n = m.size();
  Matrix r(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      r[u][v] = (keep >> u & 1) && (keep >> v & 1) && m[u][v];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(keep >> k & 1)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

// A vertex set is acyclic iff no vertex reaches itself inside it.
inline bool acyclic(const Matrix& m, std::uint64_t keep) {
  auto r = closure(m, keep);
  for (std::size_t v = 0; v < m.size(); ++v) {
    if ((keep >> v & 1) && r[v][v]) return false;
  }
  return true;
}

inline bool strongly_connected(const Matrix& m, std::uint64_t s) {
  if (s == 0) return false;
  auto r = closure(m, s);
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (u != v && (s >> u & 1) && (s >> v & 1) && !r[u][v]) return false;
    }
  }
  return true;
}

// The recursive cycle rank definition evaluated on vertex masks, with components found by mutual
// reachability.
inline std::size_t crank(const Matrix& m, std::uint64_t keep,
                         std::map<std::uint64_t, std::size_t>& memo) {
  if (auto it = memo.find(keep); it != memo.end()) return it->second;
  const std::size_t n = m.size();
  auto r = closure(m, keep);
  std::size_t result = 0;
  if (!acyclic(m, keep)) {
    if (strongly_connected(m, keep)) {
      result = SIZE_MAX;
      for (std::size_t v = 0; v < n; ++v) {
        if (keep >> v & 1) result = std::min(result, 1 + crank(m, keep & ~(std::uint64_t{1} << v), memo));
      }
    } else {
      std::uint64_t seen = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (!(keep >> v & 1) || (seen >> v & 1)) continue;
        std::uint64_t comp = std::uint64_t{1} << v;
        for (std::size_t w = 0; w < n; ++w) {
          if ((keep >> w & 1) && r[v][w] && r[w][v]) comp |= std::uint64_t{1} << w;
        }
        seen |= comp;
        result = std::max(result, crank(m, comp, memo));
      }
    }
  }
  memo[keep] = result;
  return result;
}

inline std::size_t crank(const cyclerank::Digraph& g) {
  std::map<std::uint64_t, std::size_t> memo;
  auto m = matrix_of(g);
  return crank(m, g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1, memo);
}

// Smallest DFVS by increasing cardinality, ties broken by the lexicographic
// order on sorted vertex lists.
inline std::vector<std::size_t> min_dfvs(const cyclerank::Digraph& g) {
  const std::size_t n = g.order();
  auto m = matrix_of(g);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  std::vector<std::vector<std::size_t>> best;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::uint64_t s = 0; s <= all; ++s) {
      if (static_cast<std::size_t>(__builtin_popcountll(s)) != k) continue;
      if (!acyclic(m, all & ~s)) continue;
      std::vector<std::size_t> v;
      for (std::size_t i = 0; i < n; ++i) {
        if (s >> i & 1) v.push_back(i);
      }
      best.push_back(v);
    }
    if (!best.empty()) break;
  }
  return *std::min_element(best.begin(), best.end());
}

// Directed pathwidth from interval models: every vertex occupies a range of
// positions 0..2n-1, and an edge (u,v) needs u to start no later than v ends.
// Exponential in n; meant for n <= 4.
inline std::size_t dpw_intervals(const cyclerank::Digraph& g) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  const int positions = static_cast<int>(2 * n);
  std::vector<std::pair<int, int>> choices;
  for (int a = 0; a < positions; ++a) {
    for (int b = a; b < positions; ++b) choices.emplace_back(a, b);
  }
  std::vector<std::pair<int, int>> iv(n);
  std::size_t best = n;
  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v == n) {
      for (const auto& [x, y] : g.edges()) {
        if (iv[x].first > iv[y].second) return;
      }
      std::size_t w = 0;
      for (int p = 0; p < positions; ++p) {
        std::size_t c = 0;
        for (const auto& [a, b] : iv) c += (a <= p && p <= b);
        w = std::max(w, c);
      }
      best = std::min(best, w - 1);
      return;
    }
    for (const auto& c : choices) {
      iv[v] = c;
      assign(v + 1);
    }
  };
  assign(0);
  return best;
}

// Weak separator number straight from the definition.
inline std::size_t snum(const cyclerank::Digraph& g) {
  const std::size_t n = g.order();
  auto m = matrix_of(g);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  auto balanced = [&](std::uint64_t rest) {
    const std::size_t size = __builtin_popcountll(rest);
    auto r = closure(m, rest);
    for (std::size_t v = 0; v < n; ++v) {
      if (!(rest >> v & 1)) continue;
      std::size_t comp = 1;
      for (std::size_t w = 0; w < n; ++w) {
        if (w != v && (rest >> w & 1) && r[v][w] && r[w][v]) ++comp;
      }
      if (comp > (size + 1) / 2) return false;
    }
    return true;
  };
  std::size_t result = 0;
  for (std::uint64_t u = 0; u <= all; ++u) {
    std::size_t need = n;
    for (std::uint64_t s = u;; s = (s - 1) & u) {
      if (balanced(u & ~s)) need = std::min<std::size_t>(need, __builtin_popcountll(s));
      if (s == 0) break;
    }
    result = std::max(result, need);
  }
  return result;
}

inline std::size_t rk(std::size_t k, std::size_t n) {
  if (n <= k) return n;
  return k + rk(k, (n - k + 1) / 2);
}

// Regex membership by computing, for every subexpression, the relation
// {(i, j) : it matches w[i..j)} as bit rows. Words up to 31 symbols.
class Matcher {
 public:
  using Rows = std::vector<std::uint32_t>;

  explicit Matcher(std::string word) : w_(std::move(word)), n_(w_.size() + 1) {}

  bool matches(const cyclerank::Regex& r) { return (eval(r)[0] >> (n_ - 1)) & 1; }

 private:
  Rows identity() const {
    Rows m(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) m[i] = std::uint32_t{1} << i;
    return m;
  }

  Rows eval(const cyclerank::Regex& r) {
    using K = cyclerank::Regex::Kind;
    switch (r.kind()) {
      case K::empty_set:
        return Rows(n_, 0);
      case K::empty_word:
        return identity();
      case K::symbol: {
        Rows m(n_, 0);
        for (std::size_t i = 0; i + 1 < n_; ++i) {
          if (w_[i] == r.sym()) m[i] = std::uint32_t{1} << (i + 1);
        }
        return m;
      }
      case K::alt: {
        Rows a = eval(r.left()), b = eval(r.right());
        for (std::size_t i = 0; i < n_; ++i) a[i] |= b[i];
        return a;
      }
      case K::concat: {
        Rows a = eval(r.left()), b = eval(r.right()), c(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
          for (std::size_t k = 0; k < n_; ++k) {
            if (a[i] >> k & 1) c[i] |= b[k];
          }
        }
        return c;
      }
      case K::star: {
        Rows a = eval(r.inner()), id = identity();
        for (std::size_t k = 0; k < n_; ++k) {
          for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] >> k & 1) a[i] |= a[k];
          }
        }
        for (std::size_t i = 0; i < n_; ++i) a[i] |= id[i];
        return a;
      }
    }
    return Rows(n_, 0);
  }

  std::string w_;
  std::size_t n_;
};

inline bool regex_matches(const cyclerank::Regex& r, const std::string& word) {
  return Matcher(word).matches(r);
}

// Digraph with the edges encoded by the bits of `code` (bit u*n+v).
inline cyclerank::Digraph from_code(std::size_t n, std::uint64_t code) {
  std::vector<cyclerank::Edge> e;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (code >> (u * n + v) & 1) e.emplace_back(u, v);
    }
  }
  return cyclerank::Digraph(n, std::move(e));
}

}  // namespace oracle
