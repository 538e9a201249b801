#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aal/subset.hpp"

namespace aal {

// Union-find over {0..n-1} with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  Element find(Element a);
  // Returns true iff a and b were in different classes.
  bool unite(Element a, Element b);

 private:
  std::vector<Element> parent_;
};

// Equivalence relation on {0..n-1} stored as block ids in first-occurrence
// order, so equal relations have equal arrays. Whether it is compatible
// with an algebra's operations is checked by the congruence module.
class Congruence {
 public:
  Congruence() = default;
  // Canonicalizes an arbitrary block-label array.
  explicit Congruence(std::span<const Element> labels);

  static Congruence identity(std::size_t n);
  static Congruence total(std::size_t n);
  static Congruence from_blocks(std::size_t n, const std::vector<std::vector<Element>>& blocks);
  static Congruence from_pairs(std::size_t n, std::span<const std::pair<Element, Element>> pairs);

  std::size_t size() const { return block_of_.size(); }
  std::size_t num_blocks() const { return num_blocks_; }
  Element block(Element a) const { return block_of_[a]; }
  const std::vector<Element>& partition() const { return block_of_; }
  bool related(Element a, Element b) const { return block_of_[a] == block_of_[b]; }

  bool is_identity() const { return num_blocks_ == size(); }
  bool is_total() const { return num_blocks_ <= 1; }

  // Blocks sorted by least member, members ascending.
  std::vector<std::vector<Element>> blocks() const;
  // Least member of each block, indexed by block id.
  std::vector<Element> representatives() const;

  // Inclusion of relations.
  bool is_subset_of(const Congruence& o) const;
  Congruence meet(const Congruence& o) const;
  // Equivalence join (transitive closure of the union).
  Congruence join(const Congruence& o) const;

  // "[[0,1],[2,4],[3]]"
  std::string to_string() const;

  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence& o) const { return block_of_ <=> o.block_of_; }

 private:
  std::vector<Element> block_of_;
  std::size_t num_blocks_ = 0;
};

}  // namespace aal
