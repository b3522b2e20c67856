#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace whitehead {

/// Maximum vertex label supported by VertexSet.
inline constexpr int kMaxVertices = 64;

/// A set of vertex labels in 1..64, stored as a bitmask (label v <-> bit v-1).
///
/// Iteration is in ascending label order. The three-way comparison is the
/// lexicographic order of the sorted label sequences, which is the canonical
/// order used for petals and components throughout the library.
class VertexSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}

    int operator*() const { return std::countr_zero(rest_) + 1; }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr VertexSet() = default;
  VertexSet(std::initializer_list<int> labels) {
    for (int v : labels) insert(v);
  }

  static constexpr VertexSet from_bits(std::uint64_t bits) {
    VertexSet s;
    s.bits_ = bits;
    return s;
  }
  // {1, ..., n}
  static constexpr VertexSet range(int n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr VertexSet single(int v) { return from_bits(std::uint64_t{1} << (v - 1)); }

  constexpr std::uint64_t bits() const { return bits_; }

  bool contains(int v) const { return v >= 1 && v <= kMaxVertices && ((bits_ >> (v - 1)) & 1U); }
  void insert(int v) { bits_ |= std::uint64_t{1} << (v - 1); }
  void erase(int v) { bits_ &= ~(std::uint64_t{1} << (v - 1)); }

  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  // Smallest label; 0 for the empty set.
  int min() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

  bool is_subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const { return {begin(), end()}; }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int v : *this) {
      if (!first) out += ',';
      out += std::to_string(v);
      first = false;
    }
    return out + "}";
  }

  VertexSet& operator|=(VertexSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  VertexSet& operator&=(VertexSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  VertexSet& operator-=(VertexSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }
  friend VertexSet operator|(VertexSet a, VertexSet b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, VertexSet b) { return a -= b; }

  friend bool operator==(VertexSet a, VertexSet b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(VertexSet a, VertexSet b) {
    std::uint64_t x = a.bits_;
    std::uint64_t y = b.bits_;
    while (x != 0 && y != 0) {
      int ax = std::countr_zero(x);
      int by = std::countr_zero(y);
      if (ax != by) return ax <=> by;
      x &= x - 1;
      y &= y - 1;
    }
    if (x == 0 && y == 0) return std::strong_ordering::equal;
    return x == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace whitehead

template <>
struct std::hash<whitehead::VertexSet> {
  std::size_t operator()(whitehead::VertexSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
