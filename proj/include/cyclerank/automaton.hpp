#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cycle_rank.hpp"
#include "digraph.hpp"
#include "elimination.hpp"
#include "errors.hpp"
#include "regex.hpp"

namespace cyclerank {

using State = std::size_t;
using Symbol = std::size_t;  // index into the alphabet

inline constexpr Symbol kEpsilon = static_cast<Symbol>(-1);

struct Transition {
  State from = 0;
  Symbol symbol = 0;  // kEpsilon for an ε-move
  State to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite automaton with a single initial state. Symbols are arbitrary
/// whitespace-free tokens ("a", "(0,1)", ...). An automaton with zero states
/// is the empty automaton; its initial field is meaningless.
struct Nfa {
  std::size_t states = 0;
  std::vector<std::string> alphabet;
  std::vector<Transition> transitions;  // sorted, unique
  State initial = 0;
  std::vector<State> finals;  // sorted, unique

  bool has_epsilon() const {
    return std::any_of(transitions.begin(), transitions.end(),
                       [](const Transition& t) { return t.symbol == kEpsilon; });
  }

  std::optional<Symbol> symbol_index(std::string_view tok) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), tok);
    if (it == alphabet.end()) return std::nullopt;
    return static_cast<Symbol>(it - alphabet.begin());
  }

  bool is_final(State q) const { return std::binary_search(finals.begin(), finals.end(), q); }

  /// Sorts and deduplicates, then checks index ranges; throws InputError.
  void normalize() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    std::sort(finals.begin(), finals.end());
    finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
    if (states == 0) {
      if (!transitions.empty() || !finals.empty()) {
        throw InputError("automaton without states cannot have transitions or finals");
      }
      return;
    }
    if (initial >= states) throw InputError("initial state out of range");
    for (State f : finals) {
      if (f >= states) throw InputError("final state " + std::to_string(f) + " out of range");
    }
    for (const auto& t : transitions) {
      if (t.from >= states || t.to >= states) {
        throw InputError("transition state out of range");
      }
      if (t.symbol != kEpsilon && t.symbol >= alphabet.size()) {
        throw InputError("transition symbol out of range");
      }
    }
    std::vector<std::string> sorted = alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("alphabet lists a symbol twice");
    }
  }

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

inline bool is_deterministic(const Nfa& a) {
  if (a.has_epsilon()) return false;
  for (std::size_t i = 1; i < a.transitions.size(); ++i) {
    const auto& p = a.transitions[i - 1];
    const auto& q = a.transitions[i];
    if (p.from == q.from && p.symbol == q.symbol) return false;
  }
  return true;
}

/// Deterministic, exactly one final state, and deterministic after reversing
/// every transition and swapping the initial and final state.
inline bool is_bideterministic(const Nfa& a) {
  if (!is_deterministic(a) || a.finals.size() != 1) return false;
  std::vector<std::pair<State, Symbol>> incoming;
  for (const auto& t : a.transitions) incoming.emplace_back(t.to, t.symbol);
  std::sort(incoming.begin(), incoming.end());
  return std::adjacent_find(incoming.begin(), incoming.end()) == incoming.end();
}

/// An Nfa that is known to be deterministic (no ε, at most one successor per
/// state and symbol).
class Dfa {
 public:
  Dfa() = default;

  static Dfa from(Nfa a) {
    a.normalize();
    if (a.has_epsilon()) throw InputError("DFA must not contain eps transitions");
    if (!is_deterministic(a)) throw InputError("automaton is not deterministic");
    Dfa d;
    d.a_ = std::move(a);
    return d;
  }

  const Nfa& nfa() const noexcept { return a_; }
  std::size_t states() const noexcept { return a_.states; }
  const std::vector<std::string>& alphabet() const noexcept { return a_.alphabet; }

  std::optional<State> step(State q, Symbol s) const {
    auto it = std::lower_bound(a_.transitions.begin(), a_.transitions.end(),
                               Transition{q, s, 0});
    if (it == a_.transitions.end() || it->from != q || it->symbol != s) return std::nullopt;
    return it->to;
  }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Nfa a_;
};

inline bool is_bideterministic(const Dfa& a) { return is_bideterministic(a.nfa()); }

/// States as vertices; an edge p -> q whenever some symbol or ε leads from p
/// to q.
inline Digraph underlying_digraph(const Nfa& a) {
  std::vector<Edge> e;
  for (const auto& t : a.transitions) e.emplace_back(t.from, t.to);
  return Digraph(a.states, std::move(e));
}

inline Digraph underlying_digraph(const Dfa& a) { return underlying_digraph(a.nfa()); }

/// Subset simulation with ε-closure. Throws InputError on a foreign symbol.
inline bool nfa_accepts(const Nfa& a, const std::vector<std::string>& word) {
  if (a.states == 0) {
    if (!word.empty()) {
      for (const auto& s : word) {
        if (!a.symbol_index(s)) throw InputError("symbol '" + s + "' not in alphabet");
      }
    }
    return false;
  }
  std::vector<std::vector<std::pair<Symbol, State>>> out(a.states);
  for (const auto& t : a.transitions) out[t.from].emplace_back(t.symbol, t.to);
  std::vector<char> cur(a.states, 0);
  auto close = [&](std::vector<char>& set) {
    std::vector<State> stack;
    for (State q = 0; q < a.states; ++q) {
      if (set[q]) stack.push_back(q);
    }
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (auto [s, r] : out[q]) {
        if (s == kEpsilon && !set[r]) {
          set[r] = 1;
          stack.push_back(r);
        }
      }
    }
  };
  cur[a.initial] = 1;
  close(cur);
  for (const auto& tok : word) {
    auto sym = a.symbol_index(tok);
    if (!sym) throw InputError("symbol '" + tok + "' not in alphabet");
    std::vector<char> next(a.states, 0);
    for (State q = 0; q < a.states; ++q) {
      if (!cur[q]) continue;
      for (auto [s, r] : out[q]) {
        if (s == *sym) next[r] = 1;
      }
    }
    close(next);
    cur.swap(next);
  }
  return std::any_of(a.finals.begin(), a.finals.end(), [&](State f) { return cur[f]; });
}

/// Word given as a string of single-character symbols.
inline bool nfa_accepts(const Nfa& a, std::string_view word) {
  std::vector<std::string> toks;
  for (char c : word) toks.emplace_back(1, c);
  return nfa_accepts(a, toks);
}

// ---------------------------------------------------------------------------
// Regex -> NFA

namespace detail {

class ThompsonBuilder {
 public:
  explicit ThompsonBuilder(Nfa& a) : a_(a) {}

  // Returns (entry, exit) of a fragment accepting L(r).
  std::pair<State, State> build(const Regex& r) {
    switch (r.kind()) {
      case Regex::Kind::empty_set:
        return {fresh(), fresh()};
      case Regex::Kind::empty_word: {
        auto [s, f] = std::pair{fresh(), fresh()};
        edge(s, kEpsilon, f);
        return {s, f};
      }
      case Regex::Kind::symbol: {
        auto [s, f] = std::pair{fresh(), fresh()};
        edge(s, *a_.symbol_index(std::string(1, r.sym())), f);
        return {s, f};
      }
      case Regex::Kind::alt: {
        State s = fresh();
        auto [ls, lf] = build(r.left());
        auto [rs, rf] = build(r.right());
        State f = fresh();
        edge(s, kEpsilon, ls);
        edge(s, kEpsilon, rs);
        edge(lf, kEpsilon, f);
        edge(rf, kEpsilon, f);
        return {s, f};
      }
      case Regex::Kind::concat: {
        auto [ls, lf] = build(r.left());
        auto [rs, rf] = build(r.right());
        edge(lf, kEpsilon, rs);
        return {ls, rf};
      }
      case Regex::Kind::star: {
        // The only back edge of the whole construction: inner exit -> inner
        // entry. Each star therefore closes exactly one new cycle level.
        State s = fresh();
        auto [is, ifin] = build(r.inner());
        State f = fresh();
        edge(s, kEpsilon, is);
        edge(s, kEpsilon, f);
        edge(ifin, kEpsilon, is);
        edge(ifin, kEpsilon, f);
        return {s, f};
      }
    }
    return {0, 0};
  }

 private:
  State fresh() { return a_.states++; }
  void edge(State p, Symbol s, State q) { a_.transitions.push_back({p, s, q}); }

  Nfa& a_;
};

}  // namespace detail

/// Thompson-style ε-NFA with one initial and one final state. The cycle rank
/// of its transition digraph never exceeds sh(r). Alphabet: the given one
/// (characters), otherwise the symbols occurring in r, sorted.
inline Nfa regex_to_nfa(const Regex& r, std::optional<std::string_view> alphabet = std::nullopt) {
  Nfa a;
  if (alphabet) {
    for (char c : *alphabet) a.alphabet.emplace_back(1, c);
  }
  for (char c : symbols_of(r)) {
    if (!a.symbol_index(std::string(1, c))) {
      if (alphabet) throw InputError(std::string("symbol '") + c + "' not in alphabet");
      a.alphabet.emplace_back(1, c);
    }
  }
  auto [s, f] = detail::ThompsonBuilder(a).build(r);
  a.initial = s;
  a.finals = {f};
  a.normalize();
  return a;
}

// ---------------------------------------------------------------------------
// Trimming and star height of bideterministic languages

struct TrimResult {
  Dfa automaton;
  bool empty_language = false;  // automaton has no states
};

/// Keeps the states that are reachable from the initial state and can reach
/// a final state; surviving states keep their relative order.
inline TrimResult trim(const Dfa& d) {
  const Nfa& a = d.nfa();
  std::vector<char> fwd(a.states, 0), bwd(a.states, 0);
  std::vector<std::vector<State>> succ(a.states), pred(a.states);
  for (const auto& t : a.transitions) {
    succ[t.from].push_back(t.to);
    pred[t.to].push_back(t.from);
  }
  auto flood = [](std::vector<char>& mark, std::vector<State> stack,
                  const std::vector<std::vector<State>>& adj) {
    for (State q : stack) mark[q] = 1;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State r : adj[q]) {
        if (!mark[r]) {
          mark[r] = 1;
          stack.push_back(r);
        }
      }
    }
  };
  if (a.states > 0) flood(fwd, {a.initial}, succ);
  flood(bwd, a.finals, pred);
  std::vector<State> rename(a.states, a.states);
  Nfa out;
  out.alphabet = a.alphabet;
  for (State q = 0; q < a.states; ++q) {
    if (fwd[q] && bwd[q]) rename[q] = out.states++;
  }
  TrimResult res;
  if (out.states == 0) {
    res.automaton = Dfa::from(std::move(out));
    res.empty_language = true;
    return res;
  }
  out.initial = rename[a.initial];
  for (State f : a.finals) {
    if (rename[f] < a.states) out.finals.push_back(rename[f]);
  }
  for (const auto& t : a.transitions) {
    if (rename[t.from] < a.states && rename[t.to] < a.states) {
      out.transitions.push_back({rename[t.from], t.symbol, rename[t.to]});
    }
  }
  res.automaton = Dfa::from(std::move(out));
  return res;
}

struct StarHeightResult {
  std::size_t value = 0;
  EliminationForest witness;  // over the states of the trimmed automaton
  Dfa trimmed;
};

/// Star height of L(A) for an automaton whose trim is bideterministic: the
/// cycle rank of the trimmed transition digraph. Throws DomainError otherwise.
inline StarHeightResult star_height_bidet(const Dfa& a) {
  auto t = trim(a);
  if (t.empty_language || !is_bideterministic(t.automaton)) {
    throw DomainError(t.empty_language
                          ? "star_height_bidet: automaton accepts the empty language"
                          : "star_height_bidet: trimmed automaton is not bideterministic");
  }
  auto cr = crank_exact(underlying_digraph(t.automaton));
  return {cr.value, std::move(cr.witness), std::move(t.automaton)};
}

// ---------------------------------------------------------------------------
// Reductions

inline std::string edge_symbol(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

/// DFA for the closed walks of G through v: states = vertices, one symbol
/// "(x,y)" per edge with the transition x -> y, initial = only final = v.
/// G must be strongly connected.
inline Dfa walk_language_automaton(const Digraph& g, Vertex v) {
  if (v >= g.order()) throw InputError("walk automaton: start vertex out of range");
  if (!is_strongly_connected(g, g.vertices())) {
    throw DomainError("walk automaton: digraph is not strongly connected");
  }
  Nfa a;
  a.states = g.order();
  a.initial = v;
  a.finals = {v};
  for (const auto& [x, y] : g.edges()) {
    a.transitions.push_back({x, a.alphabet.size(), y});
    a.alphabet.push_back(edge_symbol(x, y));
  }
  return Dfa::from(std::move(a));
}

/// Image of the word a_{i1} a_{i2} ... (0-based symbol indices) under the
/// binary encoding used by binarize: a_i -> a^i b b a^{r-i} (1-based i).
inline std::vector<std::string> binarize_word(const std::vector<Symbol>& word, std::size_t r) {
  std::vector<std::string> out;
  for (Symbol s : word) {
    const std::size_t i = s + 1;
    out.insert(out.end(), i, "a");
    out.insert(out.end(), 2, "b");
    out.insert(out.end(), r - i, "a");
  }
  return out;
}

/// Bideterministic automaton over {a, b} accepting the image of L(A) under
/// a_i -> a^i b b a^{r-i}. Every original state p gets a forward chain
/// p+_1..p+_r (reading the leading a's, shared by all transitions out of p)
/// and a reverse chain p-_1..p-_{r-1} (reading the trailing a's, shared by
/// all transitions into p); each transition p -a_i-> q contributes one private
/// state between the two b's:
///   p -a-> p+_1 ... -a-> p+_i -b-> t -b-> q-_{r-i} -a-> ... -a-> q-_1 -a-> q
/// Cycle rank is preserved and the transition digraph has outdegree <= 2.
inline Dfa binarize(const Dfa& d) {
  const Nfa& a = d.nfa();
  if (!is_bideterministic(a)) throw DomainError("binarize: automaton is not bideterministic");
  const std::size_t n = a.states, r = a.alphabet.size();
  const std::size_t minus_len = r == 0 ? 0 : r - 1;
  auto plus = [&](State p, std::size_t j) { return n + p * r + (j - 1); };
  auto minus = [&](State q, std::size_t m) {
    return m == 0 ? q : n + n * r + q * minus_len + (m - 1);
  };
  const std::size_t first_private = n + n * r + n * minus_len;
  Nfa b;
  b.alphabet = {"a", "b"};
  b.states = first_private + a.transitions.size();
  b.initial = a.initial;
  b.finals = a.finals;
  constexpr Symbol A = 0, B = 1;
  for (std::size_t t = 0; t < a.transitions.size(); ++t) {
    const auto& tr = a.transitions[t];
    const std::size_t i = tr.symbol + 1;
    State prev = tr.from;
    for (std::size_t j = 1; j <= i; ++j) {
      b.transitions.push_back({prev, A, plus(tr.from, j)});
      prev = plus(tr.from, j);
    }
    const State mid = first_private + t;
    b.transitions.push_back({prev, B, mid});
    b.transitions.push_back({mid, B, minus(tr.to, r - i)});
    for (std::size_t m = r - i; m >= 1; --m) {
      b.transitions.push_back({minus(tr.to, m), A, minus(tr.to, m - 1)});
    }
  }
  return Dfa::from(std::move(b));
}

// ---------------------------------------------------------------------------
// Text format
//
//   states 3
//   alphabet a b
//   initial 0
//   finals 0 2
//   transitions
//   0 a 1
//   1 eps 2
//
// '#' starts a comment. "eps" is reserved for ε and cannot be an alphabet
// symbol.

inline Nfa parse_automaton(std::istream& in) {
  Nfa a;
  std::optional<std::size_t> states;
  bool have_alphabet = false, have_initial = false, have_finals = false, in_body = false;
  std::string raw;
  std::size_t lineno = 0;
  auto index = [&](std::string_view tok) {
    auto v = detail::parse_index(tok);
    if (!v) throw ParseError(lineno, "expected a state index, got '" + std::string(tok) + "'");
    return *v;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto tok = detail::split_ws(line);
    if (in_body) {
      if (tok.size() != 3) throw ParseError(lineno, "expected '<p> <symbol> <q>'");
      Transition t;
      t.from = index(tok[0]);
      t.to = index(tok[2]);
      if (tok[1] == "eps") {
        t.symbol = kEpsilon;
      } else {
        auto s = a.symbol_index(tok[1]);
        if (!s) throw ParseError(lineno, "symbol '" + std::string(tok[1]) + "' not in alphabet");
        t.symbol = *s;
      }
      if (t.from >= *states || t.to >= *states) {
        throw ParseError(lineno, "state index out of range");
      }
      a.transitions.push_back(t);
      continue;
    }
    const auto key = tok[0];
    if (key == "states") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'states <count>'");
      states = index(tok[1]);
      a.states = *states;
    } else if (key == "alphabet") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (tok[i] == "eps") throw ParseError(lineno, "'eps' is reserved");
        a.alphabet.emplace_back(tok[i]);
      }
      have_alphabet = true;
    } else if (key == "initial") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'initial <state>'");
      a.initial = index(tok[1]);
      have_initial = true;
    } else if (key == "finals") {
      for (std::size_t i = 1; i < tok.size(); ++i) a.finals.push_back(index(tok[i]));
      have_finals = true;
    } else if (key == "transitions") {
      if (!states || !have_alphabet || !have_initial || !have_finals) {
        throw ParseError(lineno, "states, alphabet, initial and finals must precede transitions");
      }
      in_body = true;
    } else {
      throw ParseError(lineno, "unknown field '" + std::string(key) + "'");
    }
  }
  if (!in_body) throw ParseError(lineno, "missing 'transitions' section");
  try {
    a.normalize();
  } catch (const InputError& e) {
    throw ParseError(lineno, e.what());
  }
  return a;
}

inline Nfa parse_automaton(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_automaton(in);
}

inline Dfa parse_dfa(std::istream& in) {
  Nfa a = parse_automaton(in);
  if (a.has_epsilon()) throw InputError("DFA files must not contain eps transitions");
  return Dfa::from(std::move(a));
}

inline std::string serialize_automaton(const Nfa& a) {
  std::ostringstream out;
  out << "states " << a.states << "\nalphabet";
  for (const auto& s : a.alphabet) out << ' ' << s;
  out << "\ninitial " << a.initial << "\nfinals";
  for (State f : a.finals) out << ' ' << f;
  out << "\ntransitions\n";
  for (const auto& t : a.transitions) {
    out << t.from << ' ' << (t.symbol == kEpsilon ? std::string("eps") : a.alphabet[t.symbol])
        << ' ' << t.to << '\n';
  }
  return out.str();
}

inline std::string serialize_automaton(const Dfa& a) { return serialize_automaton(a.nfa()); }

}  // namespace cyclerank
