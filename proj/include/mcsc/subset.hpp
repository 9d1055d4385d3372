#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace mcsc {

// Dense bitset over the ground set {0, ..., n-1} with a cached cardinality.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  Subset(std::size_t universe, std::initializer_list<std::size_t> members)
      : Subset(universe) {
    for (std::size_t x : members) insert(x);
  }

  static Subset full(std::size_t universe) {
    Subset s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  // Bit i of `mask` selects element i. Requires universe <= 64.
  static Subset from_mask(std::size_t universe, std::uint64_t mask) {
    Subset s(universe);
    if (universe > 0) {
      if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
      s.words_[0] = mask;
      s.size_ = static_cast<std::size_t>(std::popcount(mask));
    }
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(std::size_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }

  void insert(std::size_t x) {
    std::uint64_t& w = words_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (!(w & bit)) {
      w |= bit;
      ++size_;
    }
  }

  void erase(std::size_t x) {
    std::uint64_t& w = words_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (w & bit) {
      w &= ~bit;
      --size_;
    }
  }

  void flip(std::size_t x) {
    if (contains(x)) {
      erase(x);
    } else {
      insert(x);
    }
  }

  // Calls fn(i) for every member in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        fn(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size_);
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool is_subset_of(const Subset& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
  }

  std::size_t hamming_distance(const Subset& other) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      d += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
    }
    return d;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::size_t universe_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mcsc
