#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "errors.hpp"

namespace cyclerank {

using Vertex = std::size_t;
using Mask = std::uint64_t;

inline constexpr std::size_t kMaskBits = 64;

constexpr Mask bit(Vertex v) noexcept { return Mask{1} << v; }

constexpr Mask low_bits(std::size_t n) noexcept {
  return n >= kMaskBits ? ~Mask{0} : (Mask{1} << n) - 1;
}

/// Calls fn(v) for every set bit of m, in ascending order.
template <typename Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    fn(static_cast<Vertex>(std::countr_zero(m)));
    m &= m - 1;
  }
}

/// A subset of the vertex range [0, universe). Stored as a bit array so that
/// sets over at most 64 vertices convert losslessly to a single Mask, which the
/// exact algorithms use as a memoization key.
class VertexSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    const_iterator() = default;
    const_iterator(const VertexSet* set, Vertex pos) : set_(set), pos_(pos) {
      seek();
    }

    Vertex operator*() const { return pos_; }
    const_iterator& operator++() {
      ++pos_;
      seek();
      return *this;
    }
    const_iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }

   private:
    void seek() {
      const auto& w = set_->words_;
      std::size_t i = pos_ / kMaskBits;
      if (i >= w.size()) {
        pos_ = set_->universe_;
        return;
      }
      Mask cur = w[i] & ~low_bits(pos_ % kMaskBits);
      while (cur == 0) {
        if (++i >= w.size()) {
          pos_ = set_->universe_;
          return;
        }
        cur = w[i];
      }
      pos_ = i * kMaskBits + static_cast<std::size_t>(std::countr_zero(cur));
    }

    const VertexSet* set_ = nullptr;
    Vertex pos_ = 0;
  };

  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + kMaskBits - 1) / kMaskBits, 0) {}

  VertexSet(std::size_t universe, std::initializer_list<Vertex> vs)
      : VertexSet(universe) {
    for (Vertex v : vs) insert(v);
  }

  template <typename Range>
  static VertexSet of(std::size_t universe, const Range& vs) {
    VertexSet s(universe);
    for (auto v : vs) s.insert(static_cast<Vertex>(v));
    return s;
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t i = 0; i < s.words_.size(); ++i) {
      std::size_t rem = universe - i * kMaskBits;
      s.words_[i] = low_bits(rem);
    }
    return s;
  }

  static VertexSet from_mask(std::size_t universe, Mask m) {
    if (universe > kMaskBits) {
      throw CapacityError("mask conversion needs a universe of at most 64");
    }
    VertexSet s(universe);
    if (!s.words_.empty()) s.words_[0] = m & low_bits(universe);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Vertex v) const noexcept {
    return v < universe_ && (words_[v / kMaskBits] >> (v % kMaskBits)) & 1U;
  }

  void insert(Vertex v) {
    if (v >= universe_) {
      throw InputError("vertex " + std::to_string(v) + " outside range [0, " +
                       std::to_string(universe_) + ")");
    }
    words_[v / kMaskBits] |= bit(v % kMaskBits);
  }

  void erase(Vertex v) noexcept {
    if (v < universe_) words_[v / kMaskBits] &= ~bit(v % kMaskBits);
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (Mask w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(),
                       [](Mask w) { return w == 0; });
  }

  /// Smallest element; universe() when empty.
  Vertex min() const noexcept { return *begin(); }

  Mask mask() const {
    if (universe_ > kMaskBits) {
      throw CapacityError("mask conversion needs a universe of at most 64");
    }
    return words_.empty() ? 0 : words_[0];
  }

  bool is_subset_of(const VertexSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  bool intersects(const VertexSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  VertexSet& operator|=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  VertexSet without(Vertex v) const {
    VertexSet s = *this;
    s.erase(v);
    return s;
  }
  VertexSet with(Vertex v) const {
    VertexSet s = *this;
    s.insert(v);
    return s;
  }

  const_iterator begin() const { return const_iterator(this, 0); }
  const_iterator end() const { return const_iterator(this, universe_); }

  std::vector<Vertex> to_vector() const { return {begin(), end()}; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  /// Lexicographic comparison of the ascending element lists.
  friend bool lex_less(const VertexSet& a, const VertexSet& b) {
    auto ia = a.begin(), ib = b.begin();
    auto ea = a.end(), eb = b.end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
      if (*ia != *ib) return *ia < *ib;
    }
    return ia == ea && ib != eb;
  }

  /// "{0,2,5}"
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (Vertex v : *this) {
      if (!first) out += ',';
      out += std::to_string(v);
      first = false;
    }
    out += '}';
    return out;
  }

 private:
  void check_same(const VertexSet& o) const {
    assert(universe_ == o.universe_ && "vertex sets over different universes");
    (void)o;
  }

  std::size_t universe_ = 0;
  std::vector<Mask> words_;
};

}  // namespace cyclerank
