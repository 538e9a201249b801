#include "aal/subset.hpp"

#include <algorithm>
#include <bit>

namespace aal {

Subset Subset::full(std::size_t universe) {
  Subset s(universe);
  for (Element e = 0; e < universe; ++e) s.insert(e);
  return s;
}

Subset Subset::of(std::size_t universe, std::span<const Element> elems) {
  Subset s(universe);
  for (Element e : elems) s.insert(e);
  return s;
}

Subset Subset::from_mask(std::size_t universe, std::uint64_t mask) {
  Subset s(universe);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

std::size_t Subset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Subset::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Subset::is_subset_of(const Subset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool Subset::intersects(const Subset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

Subset Subset::operator&(const Subset& o) const {
  Subset r = *this;
  r &= o;
  return r;
}

Subset Subset::operator|(const Subset& o) const {
  Subset r = *this;
  r |= o;
  return r;
}

Subset& Subset::operator|=(const Subset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

Subset& Subset::operator&=(const Subset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Subset Subset::complement() const {
  Subset r(universe_);
  for (Element e = 0; e < universe_; ++e) {
    if (!contains(e)) r.insert(e);
  }
  return r;
}

std::vector<Element> Subset::elements() const {
  std::vector<Element> out;
  for (Element e = 0; e < universe_; ++e) {
    if (contains(e)) out.push_back(e);
  }
  return out;
}

std::strong_ordering Subset::operator<=>(const Subset& o) const {
  if (auto c = universe_ <=> o.universe_; c != 0) return c;
  if (auto c = count() <=> o.count(); c != 0) return c;
  auto a = elements();
  auto b = o.elements();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

std::size_t Subset::hash() const {
  std::size_t h = universe_;
  for (auto w : words_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
  return h;
}

namespace {
void choose(std::size_t n, std::size_t k, Element start, Subset& cur,
            std::vector<Subset>& out) {
  if (k == 0) {
    out.push_back(cur);
    return;
  }
  for (Element e = start; e + k <= n; ++e) {
    cur.insert(e);
    choose(n, k - 1, e + 1, cur, out);
    cur.erase(e);
  }
}
}  // namespace

std::vector<Subset> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  for (std::size_t size = 0; size <= std::min(n, k); ++size) {
    Subset cur(n);
    choose(n, size, 0, cur, out);
  }
  return out;
}

std::vector<Subset> all_subsets(std::size_t n) { return subsets_up_to(n, n); }

}  // namespace aal
