#include "aal/checks.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "aal/construct.hpp"
#include "aal/congruence.hpp"

namespace aal {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::global: return "global";
    case Variant::local: return "local";
    case Variant::parametrized: return "parametrized";
    case Variant::parametrized_local: return "parametrized_local";
  }
  return "global";
}

Variant variant_from_string(const std::string& s) {
  if (s == "global") return Variant::global;
  if (s == "local") return Variant::local;
  if (s == "parametrized") return Variant::parametrized;
  if (s == "parametrized_local" || s == "parametrized-local") return Variant::parametrized_local;
  throw ConfigError("unknown variant: " + s);
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "pass") return Outcome::pass;
  if (s == "fail") return Outcome::fail;
  if (s == "inconclusive") return Outcome::inconclusive;
  throw ConfigError("unknown outcome: " + s);
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::pass: return 0;
    case Outcome::fail: return 1;
    case Outcome::inconclusive: return 4;
  }
  return 4;
}

const std::vector<EquationSet>& EDCFCandidate::family(std::size_t n) const {
  auto it = families.find(n);
  if (it == families.end()) {
    throw ConfigError("candidate " + name + " has no family for n = " + std::to_string(n));
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// candidate templates

namespace {

std::string var_x(std::size_t i) { return "x" + std::to_string(i + 1); }
std::string var_z(std::size_t i) { return "z" + std::to_string(i + 1); }

class Expander {
 public:
  Expander(const CandidateTemplate& t, const std::map<std::string, long>& index,
           std::vector<std::string> vars)
      : t_(t), index_(index), vars_(std::move(vars)) {}

  Term expand(const Term& u) const {
    if (u.is_variable()) return u;
    const std::string& head = u.name();
    const auto& args = u.args();
    if (head == "fold") return fold(u);
    if (head == "iter") return iter(u);
    if (head == "leq") throw ConfigError("leq is only allowed at the top of an equation");
    std::vector<Term> expanded;
    for (const auto& a : args) expanded.push_back(expand(a));
    return apply_op(head, std::move(expanded));
  }

  Term apply_op(const std::string& op, std::vector<Term> args) const {
    auto it = t_.abbreviations.find(op);
    if (it == t_.abbreviations.end()) return Term::apply(op, std::move(args));
    const auto& ab = it->second;
    if (ab.params.size() != args.size()) {
      throw ConfigError("abbreviation " + op + " expects " + std::to_string(ab.params.size()) +
                        " arguments");
    }
    std::map<std::string, Term> sub;
    for (std::size_t i = 0; i < args.size(); ++i) sub.emplace(ab.params[i], args[i]);
    return expand(substitute(parse_term_unchecked(ab.body), sub));
  }

 private:
  static std::string atom(const Term& u, const char* what) {
    if (!u.is_variable() && !u.args().empty()) {
      throw ConfigError(std::string(what) + " must be a name, got " + u.to_string());
    }
    return u.name();
  }

  Term fold(const Term& u) const {
    if (u.args().size() != 2) throw ConfigError("fold takes an operation and a pattern");
    std::string op = atom(u.args()[0], "fold operation");
    std::vector<Term> items;
    for (const auto& v : vars_) {
      items.push_back(expand(substitute(u.args()[1], {{"_", Term::variable(v)}})));
    }
    if (items.empty()) {
      auto unit = t_.units.find(op);
      if (unit == t_.units.end()) {
        throw ConfigError("fold over no variables needs a unit for " + op);
      }
      return expand(parse_term_unchecked(unit->second));
    }
    Term acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = apply_op(op, {acc, items[i]});
    return acc;
  }

  Term iter(const Term& u) const {
    const auto& args = u.args();
    if (args.size() != 3 && args.size() != 4) {
      throw ConfigError("iter takes (iter K STEP X) or (iter K STEP BASE X)");
    }
    std::string k_text = atom(args[0], "iteration count");
    long k = 0;
    if (auto it = index_.find(k_text); it != index_.end()) {
      k = it->second;
    } else {
      try {
        std::size_t used = 0;
        k = std::stol(k_text, &used);
        if (used != k_text.size()) throw ConfigError("");
      } catch (const std::exception&) {
        throw ConfigError("iteration count " + k_text + " is neither a number nor an index");
      }
    }
    if (k < 0) throw ConfigError("negative iteration count");
    std::string step = atom(args[1], "iteration step");
    Term x = expand(args.back());
    Term w = args.size() == 4 ? expand(args[2]) : x;
    for (long i = 0; i < k; ++i) w = apply_op(step, {x, w});
    return w;
  }

  const CandidateTemplate& t_;
  const std::map<std::string, long>& index_;
  std::vector<std::string> vars_;
};

Term finish(const Term& u, const Signature& sig) {
  // Re-parse against the signature: bare names become constants where the
  // signature says so, and arities get checked.
  return parse_term(u.to_string(), sig);
}

std::vector<std::string> all_x(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(var_x(i));
  return v;
}

Equation expand_with(const std::string& text, const CandidateTemplate& t,
                     const std::map<std::string, long>& index, std::vector<std::string> vars,
                     const Signature& sig) {
  Expander ex(t, index, std::move(vars));
  if (auto eq = text.find('='); eq != std::string::npos) {
    return {finish(ex.expand(parse_term_unchecked(text.substr(0, eq))), sig),
            finish(ex.expand(parse_term_unchecked(text.substr(eq + 1))), sig)};
  }
  Term u = parse_term_unchecked(text);
  if (u.is_variable() || u.name() != "leq" || u.args().size() != 2) {
    throw ConfigError("equation must be \"lhs = rhs\" or \"(leq a b)\": " + text);
  }
  Term a = ex.expand(u.args()[0]);
  Term b = ex.expand(u.args()[1]);
  if (t.leq == "meet") return {finish(ex.apply_op("and", {a, b}), sig), finish(a, sig)};
  if (t.leq == "join") return {finish(ex.apply_op("or", {a, b}), sig), finish(b, sig)};
  throw ConfigError("leq form must be meet or join, got " + t.leq);
}

}  // namespace

Term expand_term(const std::string& text, const CandidateTemplate& t, std::size_t n,
                 const std::map<std::string, long>& index, const Signature& sig) {
  return finish(Expander(t, index, all_x(n)).expand(parse_term_unchecked(text)), sig);
}

Equation expand_equation(const std::string& text, const CandidateTemplate& t, std::size_t n,
                         const std::map<std::string, long>& index, const Signature& sig) {
  return expand_with(text, t, index, all_x(n), sig);
}

void materialize(EDCFCandidate& c, const CandidateTemplate& t, const Signature& sig) {
  for (std::size_t n = 0; n <= c.n_max; ++n) {
    if (c.families.count(n)) continue;
    std::vector<EquationSet> psi;
    for (const auto& schema : t.sets) {
      std::vector<long> values = schema.index_values;
      if (schema.index_name.empty()) values = {0};
      for (long value : values) {
        std::map<std::string, long> index;
        if (!schema.index_name.empty()) index[schema.index_name] = value;
        std::vector<std::vector<std::string>> var_sets;
        if (schema.over_subsets) {
          for (const auto& s : subsets_up_to(n, n)) {
            if (s.empty()) continue;
            std::vector<std::string> vs;
            for (Element e : s.elements()) vs.push_back(var_x(e));
            var_sets.push_back(std::move(vs));
          }
        } else {
          var_sets.push_back(all_x(n));
        }
        for (const auto& vs : var_sets) {
          EquationSet set;
          for (const auto& text : schema.equations) {
            set.push_back(expand_with(text, t, index, vs, sig));
          }
          psi.push_back(std::move(set));
        }
      }
    }
    c.families[n] = std::move(psi);
  }
}

void validate_candidate(const EDCFCandidate& c) {
  for (const auto& [n, psi] : c.families) {
    std::set<std::string> allowed{"y"};
    for (std::size_t i = 0; i < n; ++i) allowed.insert(var_x(i));
    for (std::size_t i = 0; i < c.params; ++i) allowed.insert(var_z(i));
    for (const auto& set : psi) {
      for (const auto& eq : set) {
        for (const auto& v : eq.variables()) {
          if (!allowed.count(v)) {
            throw ConfigError("candidate " + c.name + ": variable " + v +
                              " not allowed in Theta_" + std::to_string(n));
          }
        }
      }
    }
    if ((c.variant == Variant::global || c.variant == Variant::parametrized) && psi.size() != 1) {
      throw ConfigError("candidate " + c.name + ": a " + to_string(c.variant) +
                        " candidate needs exactly one set per n");
    }
  }
}

// ---------------------------------------------------------------------------
// testbeds

namespace {

bool has_isomorphic(const std::vector<FiniteAlgebra>& seen, const FiniteAlgebra& a,
                    const Budget& budget) {
  for (const auto& s : seen) {
    if (s.size() == a.size() && s.signature() == a.signature() && isomorphic(s, a, budget)) {
      return true;
    }
  }
  return false;
}

void multisets(std::size_t pool, std::size_t len, std::size_t start, std::vector<std::size_t>& cur,
               std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < pool; ++i) {
    cur.push_back(i);
    multisets(pool, len, i, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> multisets(std::size_t pool, std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  multisets(pool, len, 0, cur, out);
  return out;
}

std::string index_list(const Subset& s) {
  std::string out = "[";
  bool first = true;
  for (Element e : s.elements()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "]";
}

}  // namespace

Testbed generate_testbed(const std::vector<FiniteAlgebra>& generators,
                         std::size_t max_product_arity, bool include_subalgebras,
                         const Budget& budget) {
  Testbed t;
  auto add = [&](FiniteAlgebra a, const char* prov) {
    if (has_isomorphic(t.algebras, a, budget)) return;
    t.algebras.push_back(std::move(a));
    t.provenance.push_back(prov);
  };
  for (const auto& g : generators) add(g, "generator");
  for (std::size_t arity = 2; arity <= max_product_arity; ++arity) {
    for (const auto& combo : multisets(generators.size(), arity)) {
      std::vector<FiniteAlgebra> factors;
      for (auto i : combo) factors.push_back(generators[i]);
      add(direct_product(factors, budget).algebra, "product");
    }
  }
  if (include_subalgebras) {
    const std::size_t base = t.algebras.size();
    for (std::size_t i = 0; i < base; ++i) {
      const FiniteAlgebra parent = t.algebras[i];
      for (const auto& u : enumerate_subalgebras(parent, budget)) {
        if (u.empty() || u.is_full()) continue;
        add(subalgebra(parent, u, parent.name() + index_list(u)).algebra, "subalgebra");
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// shared helpers

namespace {

std::vector<std::string> labels_of(const FiniteAlgebra& a, std::span<const Element> xs) {
  std::vector<std::string> out;
  for (Element x : xs) out.push_back(a.label(x));
  return out;
}

std::string render_set(const EquationSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "; ";
    out += s[i].to_string();
  }
  return out + "}";
}

std::string render_blocks(const FiniteAlgebra& a, const Congruence& c) {
  std::string out;
  for (const auto& b : c.blocks()) {
    out += a.format(Subset::of(a.size(), b));
  }
  return out;
}

std::string render_tuple(const FiniteAlgebra& a, std::span<const Element> xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += a.label(xs[i]);
  }
  return out + ")";
}

Verdict pass_verdict(std::string check, std::string summary) {
  Verdict v;
  v.check = std::move(check);
  v.outcome = Outcome::pass;
  v.summary = std::move(summary);
  return v;
}

Verdict fail_verdict(std::string check, std::string summary, Witness w) {
  Verdict v;
  v.check = std::move(check);
  v.outcome = Outcome::fail;
  v.summary = std::move(summary);
  v.witness = std::move(w);
  return v;
}

// Equation sets of one family compiled against one algebra, with slots
// x1..xn, y, z1..zk.
class CompiledFamily {
 public:
  CompiledFamily(const std::vector<EquationSet>& psi, const FiniteAlgebra& a, std::size_t n,
                 std::size_t params)
      : n_(n), params_(params) {
    std::vector<std::string> slots = all_x(n);
    slots.push_back("y");
    for (std::size_t i = 0; i < params; ++i) slots.push_back(var_z(i));
    for (const auto& set : psi) {
      std::vector<std::pair<CompiledTerm, CompiledTerm>> eqs;
      for (const auto& eq : set) {
        eqs.emplace_back(CompiledTerm(eq.lhs, a, slots), CompiledTerm(eq.rhs, a, slots));
      }
      sets_.push_back(std::move(eqs));
    }
    size_ = a.size();
  }

  std::size_t size() const { return sets_.size(); }

  // Parameter tuple making set i hold at (a, b) under `related`, if any.
  template <typename Rel>
  std::optional<std::vector<Element>> holds(std::size_t i, std::span<const Element> ab,
                                            Rel&& related) const {
    std::vector<Element> slot(ab.begin(), ab.end());
    slot.resize(n_ + 1 + params_);
    std::optional<std::vector<Element>> found;
    for_each_tuple(size_, params_, [&](std::span<const Element> z) {
      std::copy(z.begin(), z.end(), slot.begin() + n_ + 1);
      for (const auto& [l, r] : sets_[i]) {
        if (!related(l.eval(slot), r.eval(slot))) return true;
      }
      found = std::vector<Element>(z.begin(), z.end());
      return false;
    });
    return found;
  }

 private:
  std::size_t n_;
  std::size_t params_;
  std::size_t size_ = 0;
  std::vector<std::vector<std::pair<CompiledTerm, CompiledTerm>>> sets_;
};

void check_variant(const EDCFCandidate& c, Variant variant) {
  bool parametrized = variant == Variant::parametrized || variant == Variant::parametrized_local;
  if (c.params > 0 && !parametrized) {
    throw ConfigError("candidate " + c.name + " has parameters; use a parametrized variant");
  }
  if (variant == Variant::global || variant == Variant::parametrized) {
    for (const auto& [n, psi] : c.families) {
      if (psi.size() != 1) {
        throw ConfigError("variant " + to_string(variant) + " needs one set per n, candidate " +
                          c.name + " has " + std::to_string(psi.size()) + " for n = " +
                          std::to_string(n));
      }
    }
  }
}

// The sweep behind check_edcf and its theta form. `theta(i)` gives the
// relation equations are read in on algebra i (identity for the plain form).
Verdict edcf_sweep(const std::string& check, const LogicSpec& l,
                   const std::vector<const FiniteAlgebra*>& as, const EDCFCandidate& c,
                   Variant variant, const CheckOptions& opt,
                   const std::function<Congruence(std::size_t)>& theta) {
  check_variant(c, variant);
  const std::size_t n_top = std::min(c.n_max, opt.arity_cap);
  std::uint64_t cells = 0;
  bool inexact = false;
  for (std::size_t ai = 0; ai < as.size(); ++ai) {
    const FiniteAlgebra& a = *as[ai];
    FilterSystem fs(a, l, opt.budget);
    inexact |= !fs.exact();
    const Congruence rel = theta(ai);
    auto related = [&](Element x, Element y) { return rel.related(x, y); };
    for (std::size_t n = 0; n <= n_top; ++n) {
      const auto& psi = c.family(n);
      CompiledFamily fam(psi, a, n, c.params);
      std::optional<Verdict> failure;
      std::vector<Element> ab(n + 1);
      for_each_tuple(a.size(), n, [&](std::span<const Element> tuple) {
        std::copy(tuple.begin(), tuple.end(), ab.begin());
        Filter f = fs.fg(Subset::of(a.size(), tuple));
        for (Element b = 0; b < a.size(); ++b) {
          ++cells;
          ab[n] = b;
          std::optional<std::size_t> which;
          std::optional<std::vector<Element>> params;
          for (std::size_t i = 0; i < fam.size() && !which; ++i) {
            if (auto z = fam.holds(i, ab, related)) {
              which = i;
              params = std::move(z);
            }
          }
          const bool in = f.contains(b);
          if (in == which.has_value()) continue;
          Witness w;
          w.algebra = a.name();
          w.tuple = labels_of(a, tuple);
          w.element = a.label(b);
          w.details.push_back("Fg" + render_tuple(a, tuple) + " = " + a.format(f.members()));
          if (in) {
            w.side = "b in Fg(a) but no equation set holds";
            for (const auto& s : psi) w.details.push_back("fails: " + render_set(s));
          } else {
            w.side = "b not in Fg(a) but an equation set holds";
            w.equations = render_set(psi[*which]);
            w.params = labels_of(a, *params);
          }
          if (inexact && !in) {
            Verdict v;
            v.check = check;
            v.outcome = Outcome::inconclusive;
            v.summary = "mismatch under a bounded variable count on " + a.name();
            v.witness = std::move(w);
            failure = std::move(v);
          } else {
            failure = fail_verdict(check, "candidate " + c.name + " fails on " + a.name() +
                                              " at n = " + std::to_string(n),
                                   std::move(w));
          }
          return false;
        }
        return true;
      });
      if (failure) return *failure;
    }
  }
  Verdict v = pass_verdict(check, "candidate " + c.name + " (" + to_string(variant) +
                                      ") agrees with Fg on " + std::to_string(as.size()) +
                                      " algebras, n <= " + std::to_string(n_top) + ", " +
                                      std::to_string(cells) + " cells");
  if (inexact) {
    v.outcome = Outcome::inconclusive;
    v.notes.push_back("a variable bound below |A| makes filter tests refute-only");
  }
  return v;
}

std::vector<const FiniteAlgebra*> pointers(const std::vector<FiniteAlgebra>& as) {
  std::vector<const FiniteAlgebra*> out;
  for (const auto& a : as) out.push_back(&a);
  return out;
}

Subset embed(const Subalgebra& s, const Subset& x, std::size_t parent_size) {
  return image(s.embedding, x, parent_size);
}

}  // namespace

Verdict check_edcf(const LogicSpec& l, const Testbed& t, const EDCFCandidate& c, Variant variant,
                   const CheckOptions& opt) {
  auto as = pointers(t.algebras);
  return edcf_sweep("edcf", l, as, c, variant, opt,
                    [&](std::size_t i) { return Congruence::identity(as[i]->size()); });
}

Verdict check_edcf_theta_form(const LogicSpec& l, const std::vector<FiniteAlgebra>& as,
                              const ClassSpec& k, const EDCFCandidate& c, Variant variant,
                              const CheckOptions& opt) {
  auto ps = pointers(as);
  return edcf_sweep("edcf-theta", l, ps, c, variant, opt,
                    [&](std::size_t i) { return theta_K(*ps[i], k, opt.budget); });
}

Verdict compare_candidates(const EDCFCandidate& c1, const EDCFCandidate& c2, const Testbed& t,
                           const CheckOptions& opt) {
  const std::size_t n_top = std::min({c1.n_max, c2.n_max, opt.arity_cap});
  auto identity = [](Element x, Element y) { return x == y; };
  for (std::size_t n = 0; n <= n_top; ++n) {
    const auto& psi1 = c1.family(n);
    const auto& psi2 = c2.family(n);
    // sat[side][set][algebra] = bitmap over (a, b) in A^{n+1}
    std::vector<std::vector<std::vector<std::vector<bool>>>> sat(2);
    for (int side = 0; side < 2; ++side) {
      const auto& psi = side == 0 ? psi1 : psi2;
      const auto& cand = side == 0 ? c1 : c2;
      sat[side].resize(psi.size());
      for (const auto& a : t.algebras) {
        CompiledFamily fam(psi, a, n, cand.params);
        for (std::size_t i = 0; i < psi.size(); ++i) {
          std::vector<bool> bits;
          for_each_tuple(a.size(), n + 1, [&](std::span<const Element> ab) {
            bits.push_back(fam.holds(i, ab, identity).has_value());
            return true;
          });
          sat[side][i].push_back(std::move(bits));
        }
      }
    }
    // First (algebra, cell) where `from` holds and `to` does not.
    auto counter = [&](int side, std::size_t from, std::size_t to)
        -> std::optional<std::pair<std::size_t, std::size_t>> {
      for (std::size_t ai = 0; ai < t.algebras.size(); ++ai) {
        const auto& f = sat[side][from][ai];
        const auto& g = sat[1 - side][to][ai];
        for (std::size_t cell = 0; cell < f.size(); ++cell) {
          if (f[cell] && !g[cell]) return std::make_pair(ai, cell);
        }
      }
      return std::nullopt;
    };
    for (int side = 0; side < 2; ++side) {
      const auto& psi = side == 0 ? psi1 : psi2;
      const auto& other = side == 0 ? psi2 : psi1;
      const auto& from_name = side == 0 ? c1.name : c2.name;
      const auto& to_name = side == 0 ? c2.name : c1.name;
      for (std::size_t i = 0; i < psi.size(); ++i) {
        bool matched = false;
        std::optional<std::pair<std::size_t, std::size_t>> first_counter;
        std::vector<std::string> details;
        for (std::size_t j = 0; j < other.size() && !matched; ++j) {
          auto cx = counter(side, i, j);
          if (!cx) {
            matched = true;
          } else {
            if (!first_counter) first_counter = cx;
            details.push_back("not implied: " + render_set(other[j]));
          }
        }
        if (matched) continue;
        Witness w;
        w.equations = render_set(psi[i]);
        w.side = "set of " + from_name + " implies no set of " + to_name;
        if (first_counter) {
          const auto& a = t.algebras[first_counter->first];
          std::vector<Element> ab(n + 1);
          std::size_t cell = first_counter->second;
          for (std::size_t p = n + 1; p-- > 0;) {
            ab[p] = static_cast<Element>(cell % a.size());
            cell /= a.size();
          }
          w.algebra = a.name();
          w.tuple = labels_of(a, std::span<const Element>(ab.data(), n));
          w.element = a.label(ab[n]);
        }
        w.details = std::move(details);
        return fail_verdict("compare", "unmatched set for n = " + std::to_string(n),
                            std::move(w));
      }
    }
  }
  return pass_verdict("compare", "candidates " + c1.name + " and " + c2.name +
                                     " define the same sets on " +
                                     std::to_string(t.algebras.size()) + " algebras, n <= " +
                                     std::to_string(n_top));
}

Verdict absolute_fep_check(const LogicSpec& l, const Testbed& t, const CheckOptions& opt) {
  std::size_t pairs = 0;
  for (const auto& b : t.algebras) {
    FilterSystem fsb(b, l, opt.budget);
    for (const auto& u : enumerate_subalgebras(b, opt.budget)) {
      if (u.empty() || u.is_full()) continue;
      Subalgebra sub = subalgebra(b, u);
      FilterSystem fsa(sub.algebra, l, opt.budget);
      for (const auto& x : subsets_up_to(sub.algebra.size(), opt.arity_cap)) {
        ++pairs;
        Subset in_a = embed(sub, fsa.fg(x).members(), b.size());
        Subset x_b = embed(sub, x, b.size());
        Subset trace = fsb.fg(x_b).members() & u;
        if (in_a == trace) continue;
        Witness w;
        w.algebra = b.name();
        w.tuple = labels_of(b, x_b.elements());
        for (Element e : u.elements()) {
          if (in_a.contains(e) != trace.contains(e)) {
            w.element = b.label(e);
            w.side = in_a.contains(e) ? "in Fg on the subalgebra only"
                                      : "in the trace of Fg on the whole algebra only";
            break;
          }
        }
        w.details.push_back("subalgebra " + b.format(u));
        w.details.push_back("Fg in subalgebra = " + b.format(in_a));
        w.details.push_back("A n Fg in algebra = " + b.format(trace));
        return fail_verdict("absolute-fep", "filter on a subalgebra of " + b.name() +
                                                " is not a trace",
                            std::move(w));
      }
    }
  }
  return pass_verdict("absolute-fep", "Fg traces agree on " + std::to_string(pairs) +
                                          " (subalgebra, generator set) pairs");
}

Verdict fep_check(const LogicSpec& l, const Testbed& t, const CheckOptions& opt) {
  std::size_t cases = 0;
  for (const auto& b : t.algebras) {
    FilterSystem fsb(b, l, opt.budget);
    const auto& gs = fsb.all_filters();
    for (const auto& u : enumerate_subalgebras(b, opt.budget)) {
      if (u.empty()) continue;
      Subalgebra sub = subalgebra(b, u);
      FilterSystem fsa(sub.algebra, l, opt.budget);
      for (const auto& g : gs) {
        Subset base = preimage(sub.embedding, g.members());
        for (const auto& f2 : fsa.all_filters()) {
          if (!base.is_subset_of(f2.members())) continue;
          ++cases;
          Subset f2_b = embed(sub, f2.members(), b.size());
          Subset g2 = fsb.fg(g.members() | f2_b).members();
          if ((g2 & u) == f2_b) continue;
          Witness w;
          w.algebra = b.name();
          w.side = "no extension G' of G with A n G' = F'";
          w.details.push_back("subalgebra A = " + b.format(u));
          w.details.push_back("G = " + b.format(g.members()));
          w.details.push_back("F' = " + b.format(f2_b));
          w.details.push_back("A n Fg(G u F') = " + b.format(g2 & u));
          return fail_verdict("fep", "filter extension fails on " + b.name(), std::move(w));
        }
      }
    }
  }
  return pass_verdict("fep", "every extension found, " + std::to_string(cases) + " cases");
}

Verdict factor_determined_check(const LogicSpec& l, const Testbed& t, const FactorOptions& fo,
                                const CheckOptions& opt) {
  if (fo.max_arity > 3) throw ConfigError("factor-determined check supports arity <= 3");
  const std::string check = fo.absolute ? "fdc" : "fdc-relative";
  std::vector<FilterSystem> factor_fs;
  for (const auto& a : t.algebras) factor_fs.emplace_back(a, l, opt.budget);
  std::size_t cases = 0;
  bool first_product = true;
  for (std::size_t arity = 2; arity <= fo.max_arity; ++arity) {
    for (const auto& combo : multisets(t.algebras.size(), arity)) {
      std::vector<FiniteAlgebra> factors;
      for (auto i : combo) factors.push_back(t.algebras[i]);
      Product p = direct_product(factors, opt.budget);
      FilterSystem fsp(p.algebra, l, opt.budget);
      const std::size_t m = combo.size();

      std::vector<Subset> gens;
      if (fo.pinned && first_product) {
        gens.push_back(Subset::of(p.algebra.size(), *fo.pinned));
      } else {
        gens = subsets_up_to(p.algebra.size(), opt.arity_cap);
      }
      first_product = false;

      // Base filters per factor: just the empty set in the absolute form.
      std::vector<std::vector<Subset>> bases(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (fo.absolute) {
          bases[i].push_back(Subset(factors[i].size()));
        } else {
          for (const auto& f : factor_fs[combo[i]].all_filters()) bases[i].push_back(f.members());
        }
      }
      std::vector<std::size_t> pick(m, 0);
      for (;;) {
        Subset base_prod(p.algebra.size());
        for (Element e = 0; e < p.algebra.size(); ++e) {
          bool all = true;
          for (std::size_t i = 0; i < m && all; ++i) {
            all = bases[i][pick[i]].contains(p.project(e, i));
          }
          if (all) base_prod.insert(e);
        }
        for (const auto& x : gens) {
          ++cases;
          Subset whole = fsp.fg(base_prod | x).members();
          std::vector<Subset> parts;
          for (std::size_t i = 0; i < m; ++i) {
            Subset xi = bases[i][pick[i]];
            for (Element e : x.elements()) xi.insert(p.project(e, i));
            parts.push_back(factor_fs[combo[i]].fg(xi).members());
          }
          Subset prod(p.algebra.size());
          for (Element e = 0; e < p.algebra.size(); ++e) {
            bool all = true;
            for (std::size_t i = 0; i < m && all; ++i) all = parts[i].contains(p.project(e, i));
            if (all) prod.insert(e);
          }
          if (whole == prod) continue;
          Witness w;
          w.algebra = p.algebra.name();
          w.tuple = labels_of(p.algebra, x.elements());
          for (Element e = 0; e < p.algebra.size(); ++e) {
            if (whole.contains(e) != prod.contains(e)) {
              w.element = p.algebra.label(e);
              w.side = prod.contains(e) ? "in the product of factor filters, not in Fg"
                                        : "in Fg, not in the product of factor filters";
              break;
            }
          }
          w.details.push_back("Fg = " + p.algebra.format(whole));
          w.details.push_back("product of factor Fg = " + p.algebra.format(prod));
          if (!fo.absolute) {
            for (std::size_t i = 0; i < m; ++i) {
              w.details.push_back("F_" + std::to_string(i + 1) + " = " +
                                  factors[i].format(bases[i][pick[i]]));
            }
          }
          return fail_verdict(check, "Fg on " + p.algebra.name() + " is not factor-determined",
                              std::move(w));
        }
        std::size_t i = 0;
        while (i < m && ++pick[i] == bases[i].size()) pick[i++] = 0;
        if (i == m) break;
      }
    }
  }
  return pass_verdict(check, "factor-determined on " + std::to_string(cases) + " cases");
}

Verdict test_algebra_check(const LogicSpec& l, const Testbed& t, const TestAlgebraCandidate& c,
                           const CheckOptions& opt) {
  const FiniteAlgebra& an = c.algebra;
  const std::size_t n = c.p.size();
  FilterSystem fsn(an, l, opt.budget);
  if (!fsn.fg(Subset::of(an.size(), c.p)).contains(c.q)) {
    Witness w;
    w.algebra = an.name();
    w.tuple = labels_of(an, c.p);
    w.element = an.label(c.q);
    w.side = "q not in Fg(p) on the candidate itself";
    return fail_verdict("test-algebra", "not a test algebra", std::move(w));
  }
  std::size_t cases = 0;
  for (const auto& a : t.algebras) {
    if (!(a.signature() == an.signature())) throw ArityMismatch("signatures differ");
    FilterSystem fs(a, l, opt.budget);
    std::optional<Verdict> failure;
    for_each_tuple(a.size(), n, [&](std::span<const Element> tuple) {
      Filter f = fs.fg(Subset::of(a.size(), tuple));
      for (Element b : f.members().elements()) {
        ++cases;
        std::vector<std::optional<Element>> fixed(an.size());
        bool clash = false;
        auto pin = [&](Element from, Element to) {
          if (fixed[from] && *fixed[from] != to) clash = true;
          fixed[from] = to;
        };
        for (std::size_t i = 0; i < n; ++i) pin(c.p[i], tuple[i]);
        pin(c.q, b);
        if (!clash && find_homomorphism(an, a, fixed, opt.budget)) continue;
        Witness w;
        w.algebra = a.name();
        w.tuple = labels_of(a, tuple);
        w.element = a.label(b);
        w.side = "b in Fg(a) but no homomorphism sends p to a and q to b";
        w.details.push_back("candidate " + an.name() + " p = " + render_tuple(an, c.p) +
                            " q = " + an.label(c.q));
        failure = fail_verdict("test-algebra", "candidate " + an.name() + " is not a " +
                                                   std::to_string(n) + "-test algebra",
                               std::move(w));
        return false;
      }
      return true;
    });
    if (failure) return *failure;
  }
  return pass_verdict("test-algebra", an.name() + " with p = " + render_tuple(an, c.p) +
                                          ", q = " + an.label(c.q) + " covers " +
                                          std::to_string(cases) + " cases");
}

Verdict test_algebra_search(const LogicSpec& l, const Testbed& t, std::size_t n,
                            const CheckOptions& opt) {
  std::optional<Verdict> first_failure;
  std::size_t tried = 0;
  for (const auto& b : t.algebras) {
    FilterSystem fs(b, l, opt.budget);
    std::optional<Verdict> success;
    for_each_tuple(b.size(), n, [&](std::span<const Element> p) {
      for (Element q : fs.fg(Subset::of(b.size(), p)).members().elements()) {
        ++tried;
        TestAlgebraCandidate c{b, {p.begin(), p.end()}, q};
        Verdict v = test_algebra_check(l, t, c, opt);
        if (v.outcome == Outcome::pass) {
          success = std::move(v);
          return false;
        }
        if (!first_failure) first_failure = std::move(v);
      }
      return true;
    });
    if (success) {
      success->check = "test-algebra-search";
      return *success;
    }
  }
  if (!first_failure) {
    Verdict v;
    v.check = "test-algebra-search";
    v.outcome = Outcome::inconclusive;
    v.summary = "no candidates";
    return v;
  }
  Verdict v = *first_failure;
  v.check = "test-algebra-search";
  v.summary = "none of " + std::to_string(tried) + " candidates is a " + std::to_string(n) +
              "-test algebra for the testbed";
  return v;
}

Verdict smallest_relcong_check(const LogicSpec& l, const FiniteAlgebra& a, const ClassSpec& k,
                               const RelcongOptions& ro, const CheckOptions& opt) {
  auto rel = k_congruences(a, k, 12, opt.budget);
  struct Level {
    Congruence theta;
    Quotient q;
    std::unique_ptr<FilterSystem> fs;
  };
  std::vector<Level> levels;
  for (const auto& th : rel.congruences) {
    Quotient q = quotient(a, th);
    auto fs = std::make_unique<FilterSystem>(q.algebra, l, opt.budget);
    levels.push_back({th, std::move(q), std::move(fs)});
  }
  std::size_t cases = 0;
  std::optional<Verdict> failure;
  auto test = [&](std::span<const Element> tuple, Element b) {
    ++cases;
    std::vector<const Congruence*> s;
    for (const auto& lv : levels) {
      Subset gen = image(lv.q.projection, Subset::of(a.size(), tuple), lv.q.algebra.size());
      if (lv.fs->fg(gen).contains(lv.q.projection[b])) s.push_back(&lv.theta);
    }
    if (s.empty()) return true;
    Congruence meet = *s.front();
    for (const auto* th : s) meet = meet.meet(*th);
    bool in_s = std::any_of(s.begin(), s.end(), [&](const Congruence* th) { return *th == meet; });
    if (in_s) return true;
    Witness w;
    w.algebra = a.name();
    w.tuple = labels_of(a, tuple);
    w.element = a.label(b);
    w.side = "no smallest K-congruence puts b in the relative filter";
    for (const auto* th : s) {
      bool minimal = std::none_of(s.begin(), s.end(), [&](const Congruence* o) {
        return *o != *th && o->is_subset_of(*th);
      });
      if (minimal) w.details.push_back("minimal: " + render_blocks(a, *th));
    }
    w.details.push_back("meet: " + render_blocks(a, meet) +
                        (rel.contains(meet) ? " (a K-congruence)" : " (not a K-congruence)"));
    failure = fail_verdict("minrelcong", "no smallest relative congruence on " + a.name(),
                           std::move(w));
    return false;
  };
  if (ro.tuple) {
    std::vector<Element> bs;
    if (ro.element) {
      bs.push_back(*ro.element);
    } else {
      for (Element b = 0; b < a.size(); ++b) bs.push_back(b);
    }
    for (Element b : bs) {
      if (!test(*ro.tuple, b)) return *failure;
    }
  } else {
    for (std::size_t n = 0; n <= opt.arity_cap; ++n) {
      bool done = !for_each_tuple(a.size(), n, [&](std::span<const Element> tuple) {
        for (Element b = 0; b < a.size(); ++b) {
          if (ro.element && b != *ro.element) continue;
          if (!test(tuple, b)) return false;
        }
        return true;
      });
      if (done) return *failure;
    }
  }
  return pass_verdict("minrelcong", "smallest relative congruence exists in " +
                                        std::to_string(cases) + " cases over " +
                                        std::to_string(levels.size()) + " K-congruences");
}

Verdict dually_brouwerian_check(const LogicSpec& l, const FiniteAlgebra& a,
                                const CheckOptions& opt) {
  FilterSystem fs(a, l, opt.budget);
  const auto& fi = fs.all_filters();
  for (const auto& f : fi) {
    for (const auto& g : fi) {
      std::vector<const Filter*> hs;
      for (const auto& h : fi) {
        if (g.members().is_subset_of(fs.join(f, h).members())) hs.push_back(&h);
      }
      Subset meet = Subset::full(a.size());
      for (const auto* h : hs) meet &= h->members();
      bool least = std::any_of(hs.begin(), hs.end(),
                               [&](const Filter* h) { return h->members() == meet; });
      if (least) continue;
      Witness w;
      w.algebra = a.name();
      w.side = "no least H with G <= F v H";
      w.details.push_back("F = " + a.format(f.members()));
      w.details.push_back("G = " + a.format(g.members()));
      for (const auto* h : hs) {
        bool minimal = std::none_of(hs.begin(), hs.end(), [&](const Filter* o) {
          return o->members() != h->members() && o->members().is_subset_of(h->members());
        });
        if (minimal) w.details.push_back("minimal H = " + a.format(h->members()));
      }
      return fail_verdict("brouwerian", "filter semilattice of " + a.name() +
                                            " is not dually Brouwerian",
                          std::move(w));
    }
  }
  return pass_verdict("brouwerian", std::to_string(fi.size()) + " filters on " + a.name() +
                                        ", every relative pseudo-difference exists");
}

Verdict leibniz_probe(const LogicSpec& l, const Testbed& t, LeibnizMode mode,
                      const CheckOptions& opt) {
  const std::string check = mode == LeibnizMode::monotone ? "leibniz-monotone"
                                                          : "leibniz-injective";
  std::size_t pairs = 0;
  for (const auto& a : t.algebras) {
    FilterSystem fs(a, l, opt.budget);
    auto clone = unary_polynomials(a, opt.budget);
    const auto& fi = fs.all_filters();
    std::vector<Congruence> omega;
    for (const auto& f : fi) omega.push_back(leibniz_congruence(clone, f.members()));
    for (std::size_t i = 0; i < fi.size(); ++i) {
      for (std::size_t j = 0; j < fi.size(); ++j) {
        if (i == j) continue;
        const auto& f = fi[i].members();
        const auto& g = fi[j].members();
        bool bad = false;
        if (mode == LeibnizMode::monotone) {
          if (!f.is_subset_of(g)) continue;
          ++pairs;
          bad = !omega[i].is_subset_of(omega[j]);
        } else {
          if (j < i) continue;
          ++pairs;
          bad = omega[i] == omega[j];
        }
        if (!bad) continue;
        Witness w;
        w.algebra = a.name();
        w.side = mode == LeibnizMode::monotone ? "F <= G but Omega F is not below Omega G"
                                               : "F != G but Omega F = Omega G";
        w.details.push_back("F = " + a.format(f) + ", Omega F = " + render_blocks(a, omega[i]));
        w.details.push_back("G = " + a.format(g) + ", Omega G = " + render_blocks(a, omega[j]));
        return fail_verdict(check, "Leibniz operator violation on " + a.name(), std::move(w));
      }
    }
  }
  return pass_verdict(check, "no violation among " + std::to_string(pairs) + " filter pairs");
}

Verdict search_counterexample(const std::vector<Testbed>& stages,
                              const std::function<Verdict(const Testbed&)>& check) {
  Verdict last;
  last.check = "search";
  last.outcome = Outcome::inconclusive;
  last.summary = "no stages";
  for (std::size_t i = 0; i < stages.size(); ++i) {
    Verdict v = check(stages[i]);
    if (v.outcome == Outcome::fail) {
      v.notes.push_back("found at stage " + std::to_string(i + 1) + " (" + stages[i].name + ")");
      return v;
    }
    last = v;
    last.outcome = Outcome::inconclusive;
    last.summary = "no counterexample in " + std::to_string(i + 1) + " stages";
  }
  return last;
}

std::vector<Testbed> product_stages(const std::vector<FiniteAlgebra>& generators,
                                    std::size_t max_arity, bool include_subalgebras,
                                    const Budget& budget) {
  std::vector<Testbed> out;
  if (generators.empty()) return out;
  for (std::size_t a = 1; a <= max_arity; ++a) {
    Testbed t = generate_testbed(generators, a, include_subalgebras, budget);
    t.name = "product arity " + std::to_string(a);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Testbed> prefix_stages(const std::vector<FiniteAlgebra>& fixtures) {
  std::vector<Testbed> out;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    Testbed t;
    t.name = "up to " + fixtures[i].name();
    t.algebras.assign(fixtures.begin(), fixtures.begin() + static_cast<long>(i) + 1);
    t.provenance.assign(i + 1, "generator");
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace aal
