// Brute-force reference implementations, written against the raw tables only.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aal/algebra.hpp"
#include "aal/io.hpp"
#include "aal/logic.hpp"

namespace oracle {

using aal::Element;
using aal::FiniteAlgebra;

inline Element apply(const FiniteAlgebra& a, std::size_t sym, const std::vector<Element>& args) {
  std::size_t idx = 0;
  for (Element x : args) idx = idx * a.size() + x;
  return a.tables()[sym].values()[idx];
}

inline Element eval(const aal::Term& t, const FiniteAlgebra& a,
                    const std::map<std::string, Element>& v) {
  if (t.is_variable()) return v.at(t.name());
  std::vector<Element> args;
  for (const auto& s : t.args()) args.push_back(eval(s, a, v));
  return apply(a, *a.signature().index_of(t.name()), args);
}

// Calls f on every tuple in {0..n-1}^k.
inline void tuples(std::size_t n, std::size_t k, const std::function<void(const std::vector<Element>&)>& f) {
  std::vector<Element> t(k, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= n;
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t r = c;
    for (std::size_t i = k; i-- > 0;) {
      t[i] = static_cast<Element>(r % n);
      r /= n;
    }
    f(t);
  }
}

inline bool closed(const FiniteAlgebra& a, std::uint64_t mask) {
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    bool ok = true;
    std::vector<Element> members;
    for (Element e = 0; e < a.size(); ++e)
      if (mask >> e & 1) members.push_back(e);
    unsigned k = a.signature()[s].arity;
    tuples(members.size(), k, [&](const std::vector<Element>& idx) {
      std::vector<Element> args;
      for (Element i : idx) args.push_back(members[i]);
      if (!(mask >> apply(a, s, args) & 1)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Subuniverses as bitmasks, in increasing mask order.
inline std::vector<std::uint64_t> subuniverses(const FiniteAlgebra& a) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.size()); ++m)
    if (closed(a, m)) out.push_back(m);
  return out;
}

inline bool is_hom(const std::vector<Element>& f, const FiniteAlgebra& a, const FiniteAlgebra& b) {
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    bool ok = true;
    tuples(a.size(), a.signature()[s].arity, [&](const std::vector<Element>& t) {
      std::vector<Element> img;
      for (Element x : t) img.push_back(f[x]);
      if (f[apply(a, s, t)] != apply(b, s, img)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline std::vector<std::vector<Element>> homs(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  std::vector<std::vector<Element>> out;
  tuples(b.size(), a.size(), [&](const std::vector<Element>& f) {
    if (is_hom(f, a, b)) out.push_back(f);
  });
  return out;
}

// Set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<Element>> partitions(std::size_t n) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> rg(n, 0);
  std::function<void(std::size_t, Element)> go = [&](std::size_t i, Element mx) {
    if (i == n) {
      out.push_back(rg);
      return;
    }
    for (Element b = 0; b <= mx + 1 && (i > 0 || b == 0); ++b) {
      rg[i] = b;
      go(i + 1, std::max(mx, b));
    }
  };
  if (n == 0) return {{}};
  rg[0] = 0;
  go(1, 0);
  return out;
}

inline bool is_congruence(const FiniteAlgebra& a, const std::vector<Element>& p) {
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    unsigned k = a.signature()[s].arity;
    bool ok = true;
    tuples(a.size(), k, [&](const std::vector<Element>& x) {
      if (!ok) return;
      tuples(a.size(), k, [&](const std::vector<Element>& y) {
        for (unsigned i = 0; i < k; ++i)
          if (p[x[i]] != p[y[i]]) return;
        if (p[apply(a, s, x)] != p[apply(a, s, y)]) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

inline std::vector<std::vector<Element>> congruences(const FiniteAlgebra& a) {
  std::vector<std::vector<Element>> out;
  for (auto& p : partitions(a.size()))
    if (is_congruence(a, p)) out.push_back(p);
  return out;
}

inline bool refines(const std::vector<Element>& p, const std::vector<Element>& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[i] == p[j] && q[i] != q[j]) return false;
  return true;
}

inline bool compatible(const std::vector<Element>& p, std::uint64_t f) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[i] == p[j] && (f >> i & 1) != (f >> j & 1)) return false;
  return true;
}

// F closed under every instance of every rule.
inline bool rule_filter(const FiniteAlgebra& a, const std::vector<aal::Rule>& rules, std::uint64_t f) {
  for (const auto& r : rules) {
    auto vars = r.variables();
    bool ok = true;
    tuples(a.size(), vars.size(), [&](const std::vector<Element>& t) {
      if (!ok) return;
      std::map<std::string, Element> v;
      for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = t[i];
      for (const auto& p : r.premises)
        if (!(f >> eval(p, a, v) & 1)) return;
      if (!(f >> eval(r.conclusion, a, v) & 1)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline aal::Subset to_subset(std::size_t n, std::uint64_t m) { return aal::Subset::from_mask(n, m); }

inline std::uint64_t to_mask(const aal::Subset& s) {
  std::uint64_t m = 0;
  for (Element e : s.elements()) m |= std::uint64_t{1} << e;
  return m;
}

// Every subset passing the filter test, as masks.
inline std::vector<std::uint64_t> filters(const aal::FilterSystem& fs) {
  const auto& a = fs.algebra();
  std::vector<std::uint64_t> out;
  const auto* rp = std::get_if<aal::RulePresented>(&fs.logic().body);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.size()); ++m) {
    bool ok = rp ? rule_filter(a, rp->rules, m) : fs.is_filter(to_subset(a.size(), m));
    if (ok) out.push_back(m);
  }
  return out;
}

inline std::uint64_t meet_above(const std::vector<std::uint64_t>& fams, std::uint64_t x,
                                std::size_t n) {
  std::uint64_t r = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (auto f : fams)
    if ((f & x) == x) r &= f;
  return r;
}

}  // namespace oracle

namespace fixtures {

inline aal::Workspace& ws() {
  static aal::Workspace w;
  return w;
}

inline aal::FiniteAlgebra alg(const std::string& n) { return ws().algebra(n); }

inline aal::LogicSpec logic(const std::string& n, const aal::FiniteAlgebra& a) {
  return ws().logic(n, a.signature());
}

inline aal::Subset set(const aal::FiniteAlgebra& a, const std::string& text) {
  auto e = aal::parse_elements(a, text);
  return aal::Subset::of(a.size(), e);
}

}  // namespace fixtures
