#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "automaton.hpp"
#include "digraph.hpp"
#include "regex.hpp"

namespace cyclerank {

using Rng = std::mt19937_64;

/// Each ordered pair (u, v), u != v, is an edge with probability p; loops
/// with probability loop_p.
inline Digraph random_digraph(std::size_t n, double p, Rng& rng, double loop_p = 0.0) {
  std::bernoulli_distribution edge(p), loop(loop_p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v ? loop(rng) : edge(rng)) e.emplace_back(u, v);
    }
  }
  return Digraph(n, std::move(e));
}

/// Strongly connected, loop-free, every outdegree at most max_outdeg (>= 1):
/// a Hamiltonian cycle through a random permutation, plus for every vertex
/// extra edges to uniformly chosen targets until its outdegree is drawn from
/// [1, max_outdeg].
inline Digraph random_strongly_connected(std::size_t n, std::size_t max_outdeg, Rng& rng) {
  if (n == 0) return Digraph(0);
  if (max_outdeg < 1) throw InputError("random_strongly_connected: outdegree bound must be >= 1");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<Vertex>> out(n);
  for (std::size_t i = 0; i < n && n > 1; ++i) out[perm[i]].push_back(perm[(i + 1) % n]);
  const std::size_t cap = std::min(max_outdeg, n - 1);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (Vertex v = 0; v < n && n > 1; ++v) {
    std::uniform_int_distribution<std::size_t> want_d(1, cap);
    std::size_t want = want_d(rng);
    for (std::size_t tries = 0; out[v].size() < want && tries < 8 * n; ++tries) {
      Vertex w = pick(rng);
      if (w != v && std::find(out[v].begin(), out[v].end(), w) == out[v].end()) {
        out[v].push_back(w);
      }
    }
  }
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : out[v]) e.emplace_back(v, w);
  }
  return Digraph(n, std::move(e));
}

/// Random regex of nesting depth at most `depth` over the first
/// `alphabet_size` letters of "abc...".
inline Regex random_regex(std::size_t depth, std::size_t alphabet_size, Rng& rng) {
  std::uniform_int_distribution<int> leaf(0, 9);
  std::uniform_int_distribution<std::size_t> letter(0, alphabet_size - 1);
  if (depth == 0) {
    int k = leaf(rng);
    if (k == 0) return Regex::empty_set();
    if (k == 1) return Regex::empty_word();
    return Regex::symbol(static_cast<char>('a' + letter(rng)));
  }
  std::uniform_int_distribution<int> op(0, 4);
  switch (op(rng)) {
    case 0:
      return random_regex(0, alphabet_size, rng);
    case 1:
      return Regex::alt(random_regex(depth - 1, alphabet_size, rng),
                        random_regex(depth - 1, alphabet_size, rng));
    case 2:
      return Regex::concat(random_regex(depth - 1, alphabet_size, rng),
                           random_regex(depth - 1, alphabet_size, rng));
    default:
      return Regex::star(random_regex(depth - 1, alphabet_size, rng));
  }
}

/// Random bideterministic automaton: each symbol acts as a random partial
/// injection on the states; one initial and one final state. Not trimmed.
inline Dfa random_bideterministic(std::size_t states, std::size_t r, Rng& rng,
                                  double density = 0.6) {
  Nfa a;
  a.states = states;
  for (std::size_t i = 0; i < r; ++i) a.alphabet.push_back("a" + std::to_string(i + 1));
  std::bernoulli_distribution keep(density);
  for (Symbol s = 0; s < r; ++s) {
    std::vector<State> image(states);
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    for (State q = 0; q < states; ++q) {
      if (keep(rng)) a.transitions.push_back({q, s, image[q]});
    }
  }
  std::uniform_int_distribution<State> st(0, states - 1);
  a.initial = st(rng);
  a.finals = {st(rng)};
  return Dfa::from(std::move(a));
}

}  // namespace cyclerank
