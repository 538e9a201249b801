#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace aal {

using Element = std::uint32_t;

// A subset of the carrier {0, ..., universe-1}, stored as a bitset.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static Subset full(std::size_t universe);
  static Subset of(std::size_t universe, std::span<const Element> elems);
  static Subset of(std::size_t universe, std::initializer_list<Element> elems) {
    return of(universe, std::span<const Element>(elems.begin(), elems.size()));
  }
  // Bits of `mask` as a subset; requires universe <= 64.
  static Subset from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const { return universe_; }
  bool contains(Element e) const {
    return e < universe_ && ((words_[e >> 6] >> (e & 63)) & 1u);
  }
  void insert(Element e) { words_[e >> 6] |= (std::uint64_t{1} << (e & 63)); }
  void erase(Element e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t count() const;
  bool empty() const;
  bool is_full() const { return count() == universe_; }
  bool is_subset_of(const Subset& other) const;
  bool intersects(const Subset& other) const;

  Subset operator&(const Subset& o) const;
  Subset operator|(const Subset& o) const;
  Subset complement() const;
  Subset& operator|=(const Subset& o);
  Subset& operator&=(const Subset& o);

  std::vector<Element> elements() const;

  bool operator==(const Subset& o) const = default;
  // Cardinality first, then lexicographic on the ascending element lists.
  std::strong_ordering operator<=>(const Subset& o) const;

  std::size_t hash() const;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Every subset of an n-element carrier with at most k elements, ordered by
// cardinality and then lexicographically.
std::vector<Subset> subsets_up_to(std::size_t n, std::size_t k);

// All 2^n subsets in the same order.
std::vector<Subset> all_subsets(std::size_t n);

}  // namespace aal

template <>
struct std::hash<aal::Subset> {
  std::size_t operator()(const aal::Subset& s) const noexcept { return s.hash(); }
};
