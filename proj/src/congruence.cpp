#include "aal/congruence.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aal {

bool CongruenceSet::contains(const Congruence& c) const {
  return std::binary_search(congruences.begin(), congruences.end(), c);
}

std::vector<std::vector<Element>> basic_translations(const FiniteAlgebra& a) {
  std::set<std::vector<Element>> out;
  const auto& sig = a.signature();
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < sig.size(); ++s) {
    unsigned k = sig[s].arity;
    if (k == 0) continue;
    std::vector<Element> args(k);
    for (unsigned pos = 0; pos < k; ++pos) {
      for_each_tuple(n, k - 1, [&](std::span<const Element> consts) {
        std::vector<Element> map(n);
        for (Element x = 0; x < n; ++x) {
          for (unsigned j = 0, c = 0; j < k; ++j) args[j] = (j == pos) ? x : consts[c++];
          map[x] = a.apply(s, args);
        }
        out.insert(std::move(map));
        return true;
      });
    }
  }
  return {out.begin(), out.end()};
}

bool is_congruence(const FiniteAlgebra& a, const Congruence& theta) {
  if (theta.size() != a.size()) return false;
  for (const auto& t : basic_translations(a)) {
    for (Element x = 0; x < a.size(); ++x) {
      for (Element y = x + 1; y < a.size(); ++y) {
        if (theta.related(x, y) && !theta.related(t[x], t[y])) return false;
      }
    }
  }
  return true;
}

namespace {

Congruence close_pairs(const FiniteAlgebra& a, const std::vector<std::vector<Element>>& trans,
                       std::vector<ElementPair> work) {
  UnionFind uf(a.size());
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!uf.unite(x, y)) continue;
    // Only pairs that actually merge two classes need to be propagated:
    // every other related pair is chained through such merges.
    for (const auto& t : trans) {
      if (t[x] != t[y]) work.emplace_back(t[x], t[y]);
    }
  }
  std::vector<Element> labels(a.size());
  for (Element i = 0; i < a.size(); ++i) labels[i] = uf.find(i);
  return Congruence(labels);
}

}  // namespace

Congruence cg_generated(const FiniteAlgebra& a, std::span<const ElementPair> pairs) {
  for (auto [x, y] : pairs) {
    if (x >= a.size() || y >= a.size()) throw Error("cg_generated: pair outside carrier");
  }
  return close_pairs(a, basic_translations(a), {pairs.begin(), pairs.end()});
}

Congruence cg_generated(const FiniteAlgebra& a, const Congruence& seed) {
  std::vector<ElementPair> pairs;
  auto reps = seed.representatives();
  for (Element i = 0; i < seed.size(); ++i) {
    if (reps[seed.block(i)] != i) pairs.emplace_back(reps[seed.block(i)], i);
  }
  return cg_generated(a, pairs);
}

CongruenceSet all_congruences(const FiniteAlgebra& a, std::size_t max_size,
                              const Budget& budget) {
  if (a.size() > max_size) {
    throw SizeBudgetExceeded("all_congruences: " + a.name() + " has " +
                             std::to_string(a.size()) + " elements, limit is " +
                             std::to_string(max_size));
  }
  const auto trans = basic_translations(a);
  std::set<Congruence> found{Congruence::identity(a.size())};
  std::vector<Congruence> principal;
  for (Element x = 0; x < a.size(); ++x) {
    for (Element y = x + 1; y < a.size(); ++y) {
      auto c = close_pairs(a, trans, {{x, y}});
      if (found.insert(c).second) principal.push_back(c);
    }
  }
  // Every congruence is a join of principal ones; join each new congruence
  // with the principals until nothing new appears.
  std::vector<Congruence> frontier(principal);
  std::uint64_t steps = 0;
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& c : frontier) {
      for (const auto& p : principal) {
        steps += a.size();
        budget.require(steps, "congruence lattice of " + a.name());
        auto j = c.join(p);
        if (found.insert(j).second) next.push_back(j);
      }
    }
    frontier = std::move(next);
  }
  CongruenceSet out;
  out.congruences.assign(found.begin(), found.end());
  out.closed_under_meet = true;
  for (const auto& x : out.congruences) {
    for (const auto& y : out.congruences) {
      if (!out.contains(x.meet(y))) out.closed_under_meet = false;
    }
  }
  return out;
}

bool is_compatible(const Congruence& theta, const Subset& f) {
  std::vector<int> block_state(theta.num_blocks(), -1);
  for (Element i = 0; i < theta.size(); ++i) {
    int in = f.contains(i) ? 1 : 0;
    int& st = block_state[theta.block(i)];
    if (st == -1) {
      st = in;
    } else if (st != in) {
      return false;
    }
  }
  return true;
}

bool UnaryPolynomialClone::contains(const std::vector<Element>& f) const {
  return std::binary_search(functions.begin(), functions.end(), f);
}

UnaryPolynomialClone unary_polynomials(const FiniteAlgebra& a, const Budget& budget) {
  const std::size_t n = a.size();
  const auto trans = basic_translations(a);
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> work;
  auto add = [&](std::vector<Element> f) {
    if (found.insert(f).second) work.push_back(std::move(f));
  };
  std::vector<Element> id(n);
  for (Element i = 0; i < n; ++i) id[i] = i;
  add(id);
  std::uint64_t steps = 0;
  while (!work.empty()) {
    auto p = std::move(work.back());
    work.pop_back();
    for (const auto& t : trans) {
      steps += n;
      budget.require(steps, "unary polynomial clone of " + a.name());
      std::vector<Element> q(n);
      for (Element x = 0; x < n; ++x) q[x] = t[p[x]];
      add(std::move(q));
    }
  }
  return {{found.begin(), found.end()}};
}

Congruence leibniz_congruence(const UnaryPolynomialClone& clone, const Subset& f) {
  const std::size_t n = f.universe();
  // Two elements are related iff every polynomial sends both into F or both
  // out of it; group elements by that membership profile.
  std::map<std::vector<bool>, Element> profile_ids;
  std::vector<Element> labels(n);
  for (Element x = 0; x < n; ++x) {
    std::vector<bool> profile(clone.functions.size());
    for (std::size_t i = 0; i < clone.functions.size(); ++i) {
      profile[i] = f.contains(clone.functions[i][x]);
    }
    auto [it, fresh] = profile_ids.try_emplace(std::move(profile),
                                               static_cast<Element>(profile_ids.size()));
    labels[x] = it->second;
  }
  return Congruence(labels);
}

Congruence leibniz_congruence(const FiniteAlgebra& a, const Subset& f, const Budget& budget) {
  return leibniz_congruence(unary_polynomials(a, budget), f);
}

}  // namespace aal
