#include "aal/classes.hpp"

#include <algorithm>

#include "aal/construct.hpp"

namespace aal {

bool holds_universally(const QuasiEquation& q, const FiniteAlgebra& a) {
  std::vector<std::string> vars;
  for (const auto& e : q.antecedents) {
    e.lhs.collect_variables(vars);
    e.rhs.collect_variables(vars);
  }
  q.consequent.lhs.collect_variables(vars);
  q.consequent.rhs.collect_variables(vars);
  std::vector<std::pair<CompiledTerm, CompiledTerm>> ante;
  for (const auto& e : q.antecedents) {
    ante.emplace_back(CompiledTerm(e.lhs, a, vars), CompiledTerm(e.rhs, a, vars));
  }
  CompiledTerm cl(q.consequent.lhs, a, vars);
  CompiledTerm cr(q.consequent.rhs, a, vars);
  return for_each_tuple(a.size(), vars.size(), [&](std::span<const Element> t) {
    for (const auto& [l, r] : ante) {
      if (l.eval(t) != r.eval(t)) return true;
    }
    return cl.eval(t) == cr.eval(t);
  });
}

bool member(const FiniteAlgebra& b, const ClassSpec& k, const Budget& budget) {
  if (const auto* ax = std::get_if<AxiomaticClass>(&k.body)) {
    for (const auto& e : ax->equations) {
      if (!holds_universally(e, b)) return false;
    }
    for (const auto& q : ax->quasi) {
      if (!holds_universally(q, b)) return false;
    }
    return true;
  }
  const auto& gen = std::get<GeneratedQuasivariety>(k.body);
  const std::size_t n = b.size();
  std::vector<bool> separated(n * n, false);
  std::size_t missing = n * (n - 1) / 2;
  for (const auto& c : gen.generators) {
    if (missing == 0) break;
    for (const auto& h : enumerate_homomorphisms(b, c, budget)) {
      for (Element x = 0; x < n; ++x) {
        for (Element y = x + 1; y < n; ++y) {
          if (h[x] != h[y] && !separated[x * n + y]) {
            separated[x * n + y] = true;
            --missing;
          }
        }
      }
    }
  }
  return missing == 0;
}

bool RelativeCongruenceSet::contains(const Congruence& c) const {
  return std::binary_search(congruences.begin(), congruences.end(), c);
}

RelativeCongruenceSet k_congruences(const FiniteAlgebra& a, const ClassSpec& k,
                                    std::size_t max_size, const Budget& budget) {
  RelativeCongruenceSet out;
  for (const auto& theta : all_congruences(a, max_size, budget).congruences) {
    if (member(quotient(a, theta).algebra, k, budget)) out.congruences.push_back(theta);
  }
  out.closed_under_meet = true;
  for (const auto& x : out.congruences) {
    for (const auto& y : out.congruences) {
      if (!out.contains(x.meet(y))) out.closed_under_meet = false;
    }
  }
  return out;
}

Congruence cg_K(const FiniteAlgebra& a, const ClassSpec& k, std::span<const ElementPair> pairs,
                const Budget& budget) {
  auto rel = k_congruences(a, k, 12, budget);
  std::optional<Congruence> meet;
  for (const auto& theta : rel.congruences) {
    bool has_all = std::all_of(pairs.begin(), pairs.end(),
                               [&](const ElementPair& p) { return theta.related(p.first, p.second); });
    if (!has_all) continue;
    meet = meet ? meet->meet(theta) : theta;
  }
  if (!meet) {
    throw EmptyRelativeCongruenceSet("no " + k.name + "-congruence on " + a.name() +
                                     " contains the requested pairs");
  }
  if (!rel.contains(*meet)) {
    throw EmptyRelativeCongruenceSet("intersection of " + k.name + "-congruences on " +
                                     a.name() + " is not a " + k.name + "-congruence");
  }
  return *meet;
}

Congruence theta_K(const FiniteAlgebra& a, const ClassSpec& k, const Budget& budget) {
  return cg_K(a, k, {}, budget);
}

}  // namespace aal
