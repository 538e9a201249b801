#include "aal/partition.hpp"

#include <map>

namespace aal {

UnionFind::UnionFind(std::size_t n) : parent_(n) {
  for (Element i = 0; i < n; ++i) parent_[i] = i;
}

Element UnionFind::find(Element a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

bool UnionFind::unite(Element a, Element b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (a < b) std::swap(a, b);
  parent_[a] = b;
  return true;
}

Congruence::Congruence(std::span<const Element> labels) : block_of_(labels.size()) {
  std::map<Element, Element> renum;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = renum.try_emplace(labels[i], static_cast<Element>(renum.size()));
    block_of_[i] = it->second;
  }
  num_blocks_ = renum.size();
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Element> l(n);
  for (Element i = 0; i < n; ++i) l[i] = i;
  return Congruence(l);
}

Congruence Congruence::total(std::size_t n) {
  std::vector<Element> l(n, 0);
  return Congruence(l);
}

Congruence Congruence::from_blocks(std::size_t n,
                                   const std::vector<std::vector<Element>>& blocks) {
  UnionFind uf(n);
  for (const auto& b : blocks) {
    for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0], b[i]);
  }
  std::vector<Element> l(n);
  for (Element i = 0; i < n; ++i) l[i] = uf.find(i);
  return Congruence(l);
}

Congruence Congruence::from_pairs(std::size_t n,
                                  std::span<const std::pair<Element, Element>> pairs) {
  UnionFind uf(n);
  for (auto [a, b] : pairs) uf.unite(a, b);
  std::vector<Element> l(n);
  for (Element i = 0; i < n; ++i) l[i] = uf.find(i);
  return Congruence(l);
}

std::vector<std::vector<Element>> Congruence::blocks() const {
  std::vector<std::vector<Element>> out(num_blocks_);
  for (Element i = 0; i < block_of_.size(); ++i) out[block_of_[i]].push_back(i);
  return out;  // first-occurrence numbering already sorts by least member
}

std::vector<Element> Congruence::representatives() const {
  std::vector<Element> reps(num_blocks_, 0);
  std::vector<bool> seen(num_blocks_, false);
  for (Element i = 0; i < block_of_.size(); ++i) {
    if (!seen[block_of_[i]]) {
      seen[block_of_[i]] = true;
      reps[block_of_[i]] = i;
    }
  }
  return reps;
}

bool Congruence::is_subset_of(const Congruence& o) const {
  // Each of our blocks must sit inside one block of o.
  std::vector<Element> image(num_blocks_, static_cast<Element>(-1));
  for (Element i = 0; i < block_of_.size(); ++i) {
    Element& img = image[block_of_[i]];
    if (img == static_cast<Element>(-1)) {
      img = o.block_of_[i];
    } else if (img != o.block_of_[i]) {
      return false;
    }
  }
  return true;
}

Congruence Congruence::meet(const Congruence& o) const {
  std::vector<Element> l(size());
  for (Element i = 0; i < size(); ++i) {
    l[i] = block_of_[i] * static_cast<Element>(o.num_blocks_ + 1) + o.block_of_[i];
  }
  return Congruence(l);
}

Congruence Congruence::join(const Congruence& o) const {
  UnionFind uf(size());
  auto reps = representatives();
  for (Element i = 0; i < size(); ++i) uf.unite(i, reps[block_of_[i]]);
  auto oreps = o.representatives();
  for (Element i = 0; i < size(); ++i) uf.unite(i, oreps[o.block_of_[i]]);
  std::vector<Element> l(size());
  for (Element i = 0; i < size(); ++i) l[i] = uf.find(i);
  return Congruence(l);
}

std::string Congruence::to_string() const {
  std::string s = "[";
  bool first_block = true;
  for (const auto& b : blocks()) {
    if (!first_block) s += ",";
    first_block = false;
    s += "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(b[i]);
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace aal
