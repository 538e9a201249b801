#include "aal/construct.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace aal {

std::vector<Element> Product::decode(Element e) const {
  std::vector<Element> t(factor_sizes.size());
  for (std::size_t i = 0; i < factor_sizes.size(); ++i) {
    t[i] = static_cast<Element>(e % factor_sizes[i]);
    e = static_cast<Element>(e / factor_sizes[i]);
  }
  return t;
}

Element Product::encode(std::span<const Element> tuple) const {
  Element e = 0;
  for (std::size_t i = factor_sizes.size(); i-- > 0;) {
    e = static_cast<Element>(e * factor_sizes[i] + tuple[i]);
  }
  return e;
}

Element Product::project(Element e, std::size_t factor) const {
  for (std::size_t i = 0; i < factor; ++i) e = static_cast<Element>(e / factor_sizes[i]);
  return static_cast<Element>(e % factor_sizes[factor]);
}

FiniteAlgebra trivial_algebra(const Signature& sig, std::string name) {
  std::vector<OperationTable> tables;
  for (const auto& s : sig.symbols()) tables.emplace_back(s.arity, 1, std::vector<Element>{0});
  return FiniteAlgebra(std::move(name), sig, 1, std::move(tables), {"*"});
}

Product direct_product(std::span<const FiniteAlgebra> factors, const Budget& budget) {
  if (factors.empty()) {
    throw ConfigError("direct_product of an empty list needs an explicit signature");
  }
  return direct_product(factors, factors.front().signature(), budget);
}

Product direct_product(std::span<const FiniteAlgebra> factors, const Signature& sig,
                       const Budget& budget) {
  Product p;
  std::uint64_t size = 1;
  std::string name;
  for (const auto& f : factors) {
    if (!(f.signature() == sig)) {
      throw ArityMismatch("direct_product: signature of " + f.name() + " differs");
    }
    p.factor_sizes.push_back(f.size());
    size = size > UINT64_MAX / f.size() ? UINT64_MAX : size * f.size();
    name += (name.empty() ? "" : "x") + f.name();
  }
  if (factors.empty()) {
    p.algebra = trivial_algebra(sig, "1");
    return p;
  }
  std::uint64_t steps = 0;
  for (const auto& s : sig.symbols()) {
    std::uint64_t entries = checked_pow(size, s.arity);
    steps = entries > UINT64_MAX / factors.size() ? UINT64_MAX : steps + entries * factors.size();
  }
  budget.require(steps, "direct product " + name);

  const std::size_t n = static_cast<std::size_t>(size);
  std::vector<OperationTable> tables;
  std::vector<std::vector<Element>> decoded(n);
  for (Element e = 0; e < n; ++e) decoded[e] = p.decode(e);

  for (std::size_t s = 0; s < sig.size(); ++s) {
    unsigned k = sig[s].arity;
    std::vector<Element> values;
    values.reserve(checked_pow(n, k));
    std::vector<Element> comp(factors.size());
    std::vector<Element> fargs(k);
    for_each_tuple(n, k, [&](std::span<const Element> args) {
      for (std::size_t i = 0; i < factors.size(); ++i) {
        for (unsigned j = 0; j < k; ++j) fargs[j] = decoded[args[j]][i];
        comp[i] = factors[i].apply(s, fargs);
      }
      values.push_back(p.encode(comp));
      return true;
    });
    tables.emplace_back(k, n, std::move(values));
  }
  std::vector<std::string> labels;
  for (Element e = 0; e < n; ++e) {
    std::string l = "<";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) l += ",";
      l += factors[i].label(decoded[e][i]);
    }
    labels.push_back(l + ">");
  }
  p.algebra = FiniteAlgebra(name, sig, n, std::move(tables), std::move(labels));
  return p;
}

FiniteAlgebra power(const FiniteAlgebra& a, std::size_t exponent, const Budget& budget) {
  std::vector<FiniteAlgebra> fs(exponent, a);
  auto p = direct_product(fs, a.signature(), budget);
  p.algebra.set_name(a.name() + "^" + std::to_string(exponent));
  return std::move(p.algebra);
}

Subset subuniverse_generated(const FiniteAlgebra& a, const Subset& x) {
  Subset s = x;
  for (Element c : a.constants()) s.insert(c);
  const auto& sig = a.signature();
  bool changed = true;
  while (changed) {
    changed = false;
    auto members = s.elements();
    for (std::size_t sym = 0; sym < sig.size(); ++sym) {
      unsigned k = sig[sym].arity;
      if (k == 0) continue;
      std::vector<Element> args(k);
      for_each_tuple(members.size(), k, [&](std::span<const Element> idx) {
        for (unsigned j = 0; j < k; ++j) args[j] = members[idx[j]];
        Element r = a.apply(sym, args);
        if (!s.contains(r)) {
          s.insert(r);
          changed = true;
        }
        return true;
      });
    }
  }
  return s;
}

std::vector<Subset> enumerate_subalgebras(const FiniteAlgebra& a, const Budget& budget) {
  std::set<Subset> found;
  std::vector<Subset> queue{subuniverse_generated(a, Subset(a.size()))};
  found.insert(queue.front());
  std::uint64_t steps = 0;
  while (!queue.empty()) {
    Subset u = queue.back();
    queue.pop_back();
    for (Element e = 0; e < a.size(); ++e) {
      if (u.contains(e)) continue;
      Subset x = u;
      x.insert(e);
      steps += a.size() * a.size();
      budget.require(steps, "subalgebra enumeration of " + a.name());
      Subset v = subuniverse_generated(a, x);
      if (found.insert(v).second) queue.push_back(v);
    }
  }
  return {found.begin(), found.end()};
}

Subalgebra subalgebra(const FiniteAlgebra& a, const Subset& universe, std::string name) {
  Subalgebra out;
  out.embedding = universe.elements();
  if (out.embedding.empty()) throw InvalidAlgebra("subalgebra: empty universe");
  std::vector<Element> index_of(a.size(), static_cast<Element>(-1));
  for (Element i = 0; i < out.embedding.size(); ++i) index_of[out.embedding[i]] = i;
  const auto& sig = a.signature();
  const std::size_t n = out.embedding.size();
  std::vector<OperationTable> tables;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    unsigned k = sig[s].arity;
    std::vector<Element> values;
    std::vector<Element> args(k);
    for_each_tuple(n, k, [&](std::span<const Element> t) {
      for (unsigned j = 0; j < k; ++j) args[j] = out.embedding[t[j]];
      Element r = a.apply(s, args);
      if (index_of[r] == static_cast<Element>(-1)) {
        throw InvalidAlgebra("subalgebra: universe not closed under " + sig[s].name);
      }
      values.push_back(index_of[r]);
      return true;
    });
    tables.emplace_back(k, n, std::move(values));
  }
  std::vector<std::string> labels;
  for (Element e : out.embedding) labels.push_back(a.label(e));
  if (name.empty()) name = a.name() + a.format(universe);
  out.algebra = FiniteAlgebra(std::move(name), sig, n, std::move(tables), std::move(labels));
  return out;
}

Quotient quotient(const FiniteAlgebra& a, const Congruence& theta) {
  if (theta.size() != a.size()) throw NotACongruence("quotient: size mismatch");
  const auto& sig = a.signature();
  const std::size_t n = a.size();
  const std::size_t m = theta.num_blocks();
  std::vector<OperationTable> tables;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    unsigned k = sig[s].arity;
    std::vector<Element> values(checked_pow(m, k), static_cast<Element>(-1));
    std::vector<Element> blocks(k);
    for_each_tuple(n, k, [&](std::span<const Element> args) {
      std::size_t idx = 0;
      for (unsigned j = 0; j < k; ++j) idx = idx * m + theta.block(args[j]);
      Element r = theta.block(a.apply(s, args));
      if (values[idx] == static_cast<Element>(-1)) {
        values[idx] = r;
      } else if (values[idx] != r) {
        throw NotACongruence(theta.to_string() + " is not compatible with " + sig[s].name +
                             " on " + a.name());
      }
      return true;
    });
    tables.emplace_back(k, m, std::move(values));
  }
  std::vector<std::string> labels;
  for (const auto& b : theta.blocks()) {
    std::string l = b.size() == 1 ? a.label(b[0]) : "[";
    if (b.size() > 1) {
      for (std::size_t i = 0; i < b.size(); ++i) l += (i ? "," : "") + a.label(b[i]);
      l += "]";
    }
    labels.push_back(l);
  }
  Quotient q;
  q.algebra = FiniteAlgebra(a.name() + "/" + theta.to_string(), sig, m, std::move(tables),
                            std::move(labels));
  q.projection = theta.partition();
  return q;
}

bool is_homomorphism(std::span<const Element> f, const FiniteAlgebra& a,
                     const FiniteAlgebra& b) {
  if (!(a.signature() == b.signature()) || f.size() != a.size()) return false;
  for (Element x : f) {
    if (x >= b.size()) return false;
  }
  const auto& sig = a.signature();
  for (std::size_t s = 0; s < sig.size(); ++s) {
    unsigned k = sig[s].arity;
    std::vector<Element> img(k);
    bool ok = for_each_tuple(a.size(), k, [&](std::span<const Element> args) {
      for (unsigned j = 0; j < k; ++j) img[j] = f[args[j]];
      return f[a.apply(s, args)] == b.apply(s, img);
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

// Table entries of A grouped by the largest element they mention, so a
// depth-first assignment of f(0), f(1), ... can check each entry as soon as
// all of its elements are assigned.
struct HomConstraint {
  std::uint32_t symbol;
  std::vector<Element> args;
  Element result;
};

class HomSearch {
 public:
  HomSearch(const FiniteAlgebra& a, const FiniteAlgebra& b,
            const std::vector<std::optional<Element>>& fixed, bool injective,
            const Budget& budget)
      : a_(a), b_(b), fixed_(fixed), injective_(injective), budget_(budget),
        by_max_(a.size()), f_(a.size(), 0), used_(b.size(), false) {
    if (!(a.signature() == b.signature())) {
      throw ArityMismatch("homomorphism search: signatures differ");
    }
    const auto& sig = a.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
      unsigned k = sig[s].arity;
      for_each_tuple(a.size(), k, [&](std::span<const Element> args) {
        Element r = a.apply(s, args);
        Element mx = r;
        for (Element x : args) mx = std::max(mx, x);
        by_max_[mx].push_back({static_cast<std::uint32_t>(s), {args.begin(), args.end()}, r});
        return true;
      });
    }
  }

  template <typename Visit>
  void run(Visit&& visit) {
    descend(0, visit);
  }

 private:
  bool consistent(Element i) const {
    std::vector<Element> img;
    for (const auto& c : by_max_[i]) {
      img.resize(c.args.size());
      for (std::size_t j = 0; j < c.args.size(); ++j) img[j] = f_[c.args[j]];
      if (b_.apply(c.symbol, img) != f_[c.result]) return false;
    }
    return true;
  }

  // Returns false to stop the search.
  template <typename Visit>
  bool descend(Element i, Visit& visit) {
    if (i == a_.size()) return visit(f_);
    Element lo = 0;
    Element hi = static_cast<Element>(b_.size());
    if (i < fixed_.size() && fixed_[i]) {
      lo = *fixed_[i];
      hi = lo + 1;
    }
    for (Element v = lo; v < hi; ++v) {
      if (injective_ && used_[v]) continue;
      budget_.require(++nodes_, "homomorphism search " + a_.name() + " -> " + b_.name());
      f_[i] = v;
      if (!consistent(i)) continue;
      if (injective_) used_[v] = true;
      bool go_on = descend(i + 1, visit);
      if (injective_) used_[v] = false;
      if (!go_on) return false;
    }
    return true;
  }

  const FiniteAlgebra& a_;
  const FiniteAlgebra& b_;
  const std::vector<std::optional<Element>>& fixed_;
  bool injective_;
  const Budget& budget_;
  std::vector<std::vector<HomConstraint>> by_max_;
  std::vector<Element> f_;
  std::vector<bool> used_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<std::vector<Element>> enumerate_homomorphisms(const FiniteAlgebra& a,
                                                          const FiniteAlgebra& b,
                                                          const Budget& budget) {
  std::vector<std::optional<Element>> none;
  std::vector<std::vector<Element>> out;
  HomSearch search(a, b, none, false, budget);
  search.run([&](const std::vector<Element>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::optional<std::vector<Element>> find_homomorphism(
    const FiniteAlgebra& a, const FiniteAlgebra& b,
    const std::vector<std::optional<Element>>& fixed, const Budget& budget) {
  std::optional<std::vector<Element>> out;
  HomSearch search(a, b, fixed, false, budget);
  search.run([&](const std::vector<Element>& f) {
    out = f;
    return false;
  });
  return out;
}

Subset image(std::span<const Element> f, const Subset& s, std::size_t codomain_size) {
  Subset out(codomain_size);
  for (Element e : s.elements()) out.insert(f[e]);
  return out;
}

Subset preimage(std::span<const Element> f, const Subset& s) {
  Subset out(f.size());
  for (Element e = 0; e < f.size(); ++e) {
    if (s.contains(f[e])) out.insert(e);
  }
  return out;
}

bool isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b, const Budget& budget) {
  if (a.size() != b.size() || !(a.signature() == b.signature())) return false;
  std::vector<std::optional<Element>> none;
  bool found = false;
  HomSearch search(a, b, none, true, budget);
  search.run([&](const std::vector<Element>&) {
    found = true;
    return false;
  });
  return found;
}

FiniteAlgebra relabel(const FiniteAlgebra& a, std::span<const Element> perm) {
  const std::size_t n = a.size();
  std::vector<Element> inv(n);
  for (Element i = 0; i < n; ++i) inv[perm[i]] = i;
  const auto& sig = a.signature();
  std::vector<OperationTable> tables;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    unsigned k = sig[s].arity;
    std::vector<Element> values;
    std::vector<Element> old_args(k);
    for_each_tuple(n, k, [&](std::span<const Element> args) {
      for (unsigned j = 0; j < k; ++j) old_args[j] = inv[args[j]];
      values.push_back(perm[a.apply(s, old_args)]);
      return true;
    });
    tables.emplace_back(k, n, std::move(values));
  }
  std::vector<std::string> labels;
  if (a.has_labels()) {
    for (Element i = 0; i < n; ++i) labels.push_back(a.label(inv[i]));
  }
  return FiniteAlgebra(a.name() + "'", sig, n, std::move(tables), std::move(labels));
}

}  // namespace aal
