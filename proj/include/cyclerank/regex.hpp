#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace cyclerank {

/// Regular expression AST. Nodes are immutable and shared between copies.
///
/// Surface syntax: '#' empty set, '@' empty word, any other printable
/// non-operator character is a symbol, '+' union, juxtaposition concatenation,
/// postfix '*' star, parentheses for grouping. Star binds tighter than
/// concatenation, which binds tighter than union. Whitespace is ignored.
class Regex {
 public:
  enum class Kind { empty_set, empty_word, symbol, alt, concat, star };

  static Regex empty_set() { return Regex(make(Kind::empty_set)); }
  static Regex empty_word() { return Regex(make(Kind::empty_word)); }
  static Regex symbol(char a) {
    auto n = make(Kind::symbol);
    n->sym = a;
    return Regex(std::move(n));
  }
  static Regex alt(Regex l, Regex r) { return binary(Kind::alt, std::move(l), std::move(r)); }
  static Regex concat(Regex l, Regex r) {
    return binary(Kind::concat, std::move(l), std::move(r));
  }
  static Regex star(Regex inner) {
    auto n = make(Kind::star);
    n->left = std::move(inner.node_);
    return Regex(std::move(n));
  }

  Kind kind() const noexcept { return node_->kind; }
  char sym() const noexcept { return node_->sym; }
  Regex left() const { return Regex(node_->left); }
  Regex right() const { return Regex(node_->right); }
  /// Operand of a star.
  Regex inner() const { return Regex(node_->left); }

  /// Fully determined text form with minimal parentheses; parses back to an
  /// equal tree.
  std::string to_string() const { return render(0); }

  friend bool operator==(const Regex& a, const Regex& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::empty_set:
      case Kind::empty_word:
        return true;
      case Kind::symbol:
        return a.sym() == b.sym();
      case Kind::star:
        return a.inner() == b.inner();
      default:
        return a.left() == b.left() && a.right() == b.right();
    }
  }

 private:
  struct Node {
    Kind kind = Kind::empty_set;
    char sym = 0;
    std::shared_ptr<const Node> left, right;
  };

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }

  explicit Regex(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Regex binary(Kind k, Regex l, Regex r) {
    auto n = make(k);
    n->left = std::move(l.node_);
    n->right = std::move(r.node_);
    return Regex(std::move(n));
  }

  // prec: 0 = union context, 1 = concat operand, 2 = star operand
  std::string render(int prec) const {
    switch (kind()) {
      case Kind::empty_set:
        return "#";
      case Kind::empty_word:
        return "@";
      case Kind::symbol:
        return std::string(1, sym());
      case Kind::star:
        return inner().render(2) + "*";
      case Kind::concat: {
        // Concatenation is parsed left-associatively; a right operand that is
        // itself a concatenation needs brackets to round-trip the same tree.
        std::string s = left().render(1) + right().render(right().kind() == Kind::concat ? 2 : 1);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case Kind::alt: {
        std::string s = left().render(0) + "+" +
                        right().render(right().kind() == Kind::alt ? 1 : 0);
        return prec > 0 ? "(" + s + ")" : s;
      }
    }
    return {};
  }

  std::shared_ptr<const Node> node_;
};

/// Syntactic star height: atoms 0, union/concatenation max, star 1 + inner.
inline std::size_t sh(const Regex& r) {
  switch (r.kind()) {
    case Regex::Kind::empty_set:
    case Regex::Kind::empty_word:
    case Regex::Kind::symbol:
      return 0;
    case Regex::Kind::star:
      return 1 + sh(r.inner());
    default:
      return std::max(sh(r.left()), sh(r.right()));
  }
}

/// Symbols occurring in r.
inline std::set<char> symbols_of(const Regex& r) {
  std::set<char> out;
  auto walk = [&](auto& self, const Regex& e) -> void {
    switch (e.kind()) {
      case Regex::Kind::symbol:
        out.insert(e.sym());
        break;
      case Regex::Kind::star:
        self(self, e.inner());
        break;
      case Regex::Kind::alt:
      case Regex::Kind::concat:
        self(self, e.left());
        self(self, e.right());
        break;
      default:
        break;
    }
  };
  walk(walk, r);
  return out;
}

class RegexSyntaxError : public InputError {
 public:
  RegexSyntaxError(std::size_t pos, const std::string& what)
      : InputError("regex position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class RegexParser {
 public:
  RegexParser(std::string_view text, std::optional<std::string_view> alphabet)
      : text_(text), alphabet_(alphabet) {}

  Regex parse() {
    skip_ws();
    if (at_end()) throw RegexSyntaxError(pos_, "empty expression");
    Regex r = parse_union();
    if (!at_end()) throw RegexSyntaxError(pos_, std::string("unexpected '") + peek() + "'");
    return r;
  }

  static bool is_symbol_char(char c) {
    return std::isprint(static_cast<unsigned char>(c)) &&
           !std::isspace(static_cast<unsigned char>(c)) &&
           std::string_view("#@+*()").find(c) == std::string_view::npos;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  Regex parse_union() {
    Regex r = parse_concat();
    skip_ws();
    while (!at_end() && peek() == '+') {
      ++pos_;
      r = Regex::alt(std::move(r), parse_concat());
      skip_ws();
    }
    return r;
  }

  bool starts_atom() {
    skip_ws();
    if (at_end()) return false;
    char c = peek();
    return c == '(' || c == '#' || c == '@' || is_symbol_char(c);
  }

  Regex parse_concat() {
    if (!starts_atom()) {
      throw RegexSyntaxError(pos_, at_end() ? "expression ends early"
                                            : std::string("unexpected '") + peek() + "'");
    }
    Regex r = parse_starred();
    while (starts_atom()) r = Regex::concat(std::move(r), parse_starred());
    return r;
  }

  Regex parse_starred() {
    Regex r = parse_atom();
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      r = Regex::star(std::move(r));
      skip_ws();
    }
    return r;
  }

  Regex parse_atom() {
    skip_ws();
    const std::size_t here = pos_;
    char c = peek();
    ++pos_;
    switch (c) {
      case '#':
        return Regex::empty_set();
      case '@':
        return Regex::empty_word();
      case '(': {
        skip_ws();
        Regex r = parse_union();
        skip_ws();
        if (at_end() || peek() != ')') throw RegexSyntaxError(pos_, "missing ')'");
        ++pos_;
        return r;
      }
      default:
        if (alphabet_ && alphabet_->find(c) == std::string_view::npos) {
          throw RegexSyntaxError(here, std::string("symbol '") + c + "' not in alphabet");
        }
        return Regex::symbol(c);
    }
  }

  std::string_view text_;
  std::optional<std::string_view> alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the surface syntax described at Regex. With an alphabet (a string
/// of permitted symbol characters), any other symbol is rejected.
inline Regex parse_regex(std::string_view text,
                         std::optional<std::string_view> alphabet = std::nullopt) {
  return detail::RegexParser(text, alphabet).parse();
}

}  // namespace cyclerank
