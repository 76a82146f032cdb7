#pragma once

#include <cstdint>
#include <vector>

#include "../vertex_set.hpp"

namespace cyclerank::detail {

// Open-addressing hash table from nonzero masks to small values. Key 0 marks
// an empty slot, so the empty set can never be stored.
class MaskTable {
 public:
  explicit MaskTable(std::size_t capacity_hint = 1024) {
    std::size_t cap = 16;
    while (cap < 2 * capacity_hint) cap <<= 1;
    keys_.assign(cap, 0);
    values_.assign(cap, 0);
  }

  std::size_t size() const noexcept { return size_; }

  const std::uint8_t* find(Mask key) const noexcept {
    std::size_t i = slot(key);
    while (keys_[i] != 0) {
      if (keys_[i] == key) return &values_[i];
      i = (i + 1) & (keys_.size() - 1);
    }
    return nullptr;
  }

  void insert(Mask key, std::uint8_t value) {
    if (2 * (size_ + 1) > keys_.size()) grow();
    std::size_t i = slot(key);
    while (keys_[i] != 0 && keys_[i] != key) i = (i + 1) & (keys_.size() - 1);
    if (keys_[i] == 0) ++size_;
    keys_[i] = key;
    values_[i] = value;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] != 0) fn(keys_[i], values_[i]);
    }
  }

 private:
  std::size_t slot(Mask key) const noexcept {
    // splitmix64 finalizer
    Mask x = key;
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x) & (keys_.size() - 1);
  }

  void grow() {
    std::vector<Mask> keys(keys_.size() * 2, 0);
    std::vector<std::uint8_t> values(keys.size(), 0);
    keys.swap(keys_);
    values.swap(values_);
    size_ = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i] != 0) insert(keys[i], values[i]);
    }
  }

  std::vector<Mask> keys_;
  std::vector<std::uint8_t> values_;
  std::size_t size_ = 0;
};

}  // namespace cyclerank::detail
