#include "aal/logic.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "aal/congruence.hpp"
#include "aal/construct.hpp"

namespace aal {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Element>& v) const noexcept {
    std::size_t h = v.size();
    for (Element e : v) h = h * 0x9E3779B1u ^ (e + 0x7F4A7C15u + (h << 6) + (h >> 2));
    return h;
  }
};

// Subalgebra of A_0 x ... x A_{w-1} generated by `gens` (and the constants).
// Elements come back in generation order.
std::vector<std::vector<Element>> close_tuples(const std::vector<const FiniteAlgebra*>& algs,
                                               std::vector<std::vector<Element>> gens,
                                               const Budget& budget, const char* what) {
  const std::size_t w = algs.size();
  const auto& sig = algs.front()->signature();
  std::vector<std::vector<Element>> elems;
  std::unordered_set<std::vector<Element>, VecHash> seen;
  auto add = [&](std::vector<Element> t) {
    if (seen.insert(t).second) elems.push_back(std::move(t));
  };
  for (auto& g : gens) add(std::move(g));
  for (std::size_t s = 0; s < sig.size(); ++s) {
    if (sig[s].arity != 0) continue;
    std::vector<Element> c(w);
    for (std::size_t i = 0; i < w; ++i) c[i] = algs[i]->table(s).values()[0];
    add(std::move(c));
  }
  std::uint64_t steps = 0;
  std::size_t old = 0;
  std::vector<Element> args;
  std::vector<std::size_t> idx;
  while (old < elems.size()) {
    const std::size_t cur = elems.size();
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const unsigned k = sig[s].arity;
      if (k == 0) continue;
      idx.assign(k, 0);
      args.resize(k);
      // Tuples of indices in [0,cur)^k with at least one index >= old: the
      // first such position p runs over [old,cur), earlier positions over
      // [0,old), later ones over [0,cur).
      for (unsigned p = 0; p < k; ++p) {
        std::vector<std::size_t> lo(k, 0);
        std::vector<std::size_t> hi(k, cur);
        for (unsigned j = 0; j < p; ++j) hi[j] = old;
        lo[p] = old;
        bool empty_range = false;
        for (unsigned j = 0; j < k; ++j) empty_range |= lo[j] >= hi[j];
        if (empty_range) continue;
        for (unsigned j = 0; j < k; ++j) idx[j] = lo[j];
        for (;;) {
          steps += w;
          budget.require(steps, what);
          std::vector<Element> r(w);
          for (std::size_t c = 0; c < w; ++c) {
            for (unsigned j = 0; j < k; ++j) args[j] = elems[idx[j]][c];
            r[c] = algs[c]->apply(s, args);
          }
          add(std::move(r));
          unsigned j = k;
          while (j > 0) {
            --j;
            if (++idx[j] < hi[j]) break;
            idx[j] = lo[j];
            if (j == 0) {
              j = k + 1;
              break;
            }
          }
          if (j == k + 1) break;
        }
      }
    }
    old = cur;
  }
  return elems;
}

}  // namespace

bool rule_valid_in_matrix(const Rule& r, const Matrix& m) {
  auto vars = r.variables();
  std::vector<CompiledTerm> prem;
  for (const auto& p : r.premises) prem.emplace_back(p, m.algebra, vars);
  CompiledTerm concl(r.conclusion, m.algebra, vars);
  return for_each_tuple(m.algebra.size(), vars.size(), [&](std::span<const Element> t) {
    for (const auto& p : prem) {
      if (!m.designated.contains(p.eval(t))) return true;
    }
    return m.designated.contains(concl.eval(t));
  });
}

FilterSystem::FilterSystem(FiniteAlgebra a, LogicSpec l, Budget budget, MatrixMethod method)
    : a_(std::move(a)), l_(std::move(l)), budget_(budget), method_(method) {
  if (const auto* rp = std::get_if<RulePresented>(&l_.body)) {
    prepare_rules(*rp);
  } else {
    prepare_matrices(std::get<MatrixDetermined>(l_.body));
  }
}

void FilterSystem::prepare_rules(const RulePresented& rp) {
  std::set<std::pair<std::vector<Element>, Element>> unique;
  std::uint64_t steps = 0;
  for (const auto& rule : rp.rules) {
    for (const auto& p : rule.premises) check_well_formed(p, a_.signature());
    check_well_formed(rule.conclusion, a_.signature());
    auto vars = rule.variables();
    steps += checked_pow(a_.size(), vars.size()) * (rule.premises.size() + 1);
    budget_.require(steps, "rule instances of " + l_.name + " on " + a_.name());
    std::vector<CompiledTerm> prem;
    for (const auto& p : rule.premises) prem.emplace_back(p, a_, vars);
    CompiledTerm concl(rule.conclusion, a_, vars);
    for_each_tuple(a_.size(), vars.size(), [&](std::span<const Element> t) {
      std::vector<Element> ps;
      for (const auto& p : prem) ps.push_back(p.eval(t));
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      Element c = concl.eval(t);
      if (!std::binary_search(ps.begin(), ps.end(), c)) unique.emplace(std::move(ps), c);
      return true;
    });
  }
  for (const auto& [ps, c] : unique) instances_.push_back({ps, c});
}

void FilterSystem::prepare_matrices(const MatrixDetermined& md) {
  for (const auto& m : md.matrices) {
    if (!(m.algebra.signature() == a_.signature())) {
      throw ArityMismatch("matrix " + m.algebra.name() + " and algebra " + a_.name() +
                          " have different signatures");
    }
  }
  const bool bounded = md.variable_bound && *md.variable_bound < a_.size();
  if (method_ == MatrixMethod::semantic || (method_ == MatrixMethod::automatic && !bounded)) {
    prepare_semantic(md);
  } else {
    prepare_clone(md);
  }
}

void FilterSystem::prepare_semantic(const MatrixDetermined& md) {
  semantic_ = true;
  std::set<Subset> seen;
  for (const auto& m : md.matrices) {
    for (const auto& u : enumerate_subalgebras(m.algebra, budget_)) {
      if (u.empty()) continue;
      Subalgebra sub = subalgebra(m.algebra, u);
      Subset e = preimage(sub.embedding, m.designated);
      Quotient q = quotient(sub.algebra, leibniz_congruence(sub.algebra, e));
      Subset eq = image(q.projection, e, q.algebra.size());
      for (const auto& h : enumerate_homomorphisms(a_, q.algebra, budget_)) {
        Subset p = preimage(h, eq);
        if (seen.insert(p).second) preimages_.push_back(std::move(p));
      }
    }
  }
}

void FilterSystem::prepare_clone(const MatrixDetermined& md) {
  const std::size_t n = a_.size();
  vars_ = n;
  if (md.variable_bound && *md.variable_bound < n) {
    vars_ = *md.variable_bound;
    exact_ = false;
  }
  Subset gens(n);
  for (Element i = 0; i < vars_; ++i) gens.insert(i);
  generated_ = subuniverse_generated(a_, gens);

  std::uint64_t steps = 0;
  for (std::size_t j = 0; j < md.matrices.size(); ++j) {
    const auto& m = md.matrices[j];
    const std::size_t bsize = m.algebra.size();
    steps += checked_pow(bsize, vars_) * n * bsize;
    budget_.require(steps, "valuations of " + l_.name + " on " + a_.name());
    std::vector<const FiniteAlgebra*> algs{&a_, &m.algebra};
    for_each_tuple(bsize, vars_, [&](std::span<const Element> v) {
      std::vector<std::vector<Element>> pair_gens;
      for (Element i = 0; i < vars_; ++i) pair_gens.push_back({i, v[i]});
      auto rel = close_tuples(algs, std::move(pair_gens), budget_, "valuation relation");
      Coordinate c{j, {v.begin(), v.end()}, Subset(n), true};
      std::vector<Element> image(n, static_cast<Element>(-1));
      for (const auto& p : rel) {
        if (!m.designated.contains(p[1])) c.bad.insert(p[0]);
        if (image[p[0]] == static_cast<Element>(-1)) {
          image[p[0]] = p[1];
        } else if (image[p[0]] != p[1]) {
          c.functional = false;
        }
      }
      // A valuation that only ever produces designated values constrains
      // nothing.
      if (!c.bad.empty()) coords_.push_back(std::move(c));
      return true;
    });
  }
}

Subset FilterSystem::matrix_consequences(const Subset& y) const {
  const auto& md = std::get<MatrixDetermined>(l_.body);
  Subset allowed = generated_;
  std::vector<const Coordinate*> joint;
  for (const auto& c : coords_) {
    if (c.bad.intersects(y)) continue;  // v sends some premise outside D
    if (c.functional) {
      allowed &= c.bad.complement();
    } else {
      joint.push_back(&c);
    }
  }
  if (joint.empty()) return allowed;

  std::vector<const FiniteAlgebra*> algs{&a_};
  for (const auto* c : joint) algs.push_back(&md.matrices[c->matrix].algebra);
  std::vector<std::vector<Element>> gens;
  for (Element i = 0; i < vars_; ++i) {
    std::vector<Element> g{i};
    for (const auto* c : joint) g.push_back(c->column[i]);
    gens.push_back(std::move(g));
  }
  auto elems = close_tuples(algs, std::move(gens), budget_, "term clone for matrix entailment");
  Subset out(a_.size());
  for (const auto& e : elems) {
    if (!allowed.contains(e[0])) continue;
    bool all_designated = true;
    for (std::size_t c = 0; c < joint.size() && all_designated; ++c) {
      all_designated = md.matrices[joint[c]->matrix].designated.contains(e[c + 1]);
    }
    if (all_designated) out.insert(e[0]);
  }
  return out;
}

Subset FilterSystem::step(const Subset& y) const {
  Subset out = y;
  if (l_.rule_presented()) {
    for (const auto& inst : instances_) {
      if (out.contains(inst.conclusion) && y.contains(inst.conclusion)) continue;
      bool fire = std::all_of(inst.premises.begin(), inst.premises.end(),
                              [&](Element p) { return y.contains(p); });
      if (fire) out.insert(inst.conclusion);
    }
    return out;
  }
  if (semantic_) {
    Subset least = Subset::full(a_.size());
    for (const auto& p : preimages_) {
      if (y.is_subset_of(p)) least &= p;
    }
    return least;
  }
  return out | matrix_consequences(y);
}

bool FilterSystem::is_filter(const Subset& f) const { return step(f) == f; }

Filter FilterSystem::checked(const Subset& f) const {
  if (!is_filter(f)) {
    throw NotAFilter(a_.format(f) + " is not a " + l_.name + "-filter on " + a_.name());
  }
  return Filter(f);
}

std::vector<Subset> FilterSystem::fg_trace(const Subset& x) const {
  std::vector<Subset> trace{x};
  for (;;) {
    Subset next = step(trace.back());
    if (next == trace.back()) return trace;
    trace.push_back(std::move(next));
  }
}

Filter FilterSystem::fg(const Subset& x) const {
  if (auto it = fg_cache_.find(x); it != fg_cache_.end()) return Filter(it->second);
  Subset cur = x;
  for (;;) {
    Subset next = step(cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  fg_cache_.emplace(x, cur);
  return Filter(cur);
}

Filter FilterSystem::fg(std::span<const Element> gens) const {
  return fg(Subset::of(a_.size(), gens));
}

const std::vector<Filter>& FilterSystem::all_filters() const {
  if (all_filters_) return *all_filters_;
  // Every filter F equals Fg(F), so closing Fg(empty) under "add one element
  // and regenerate" reaches all of them.
  std::set<Subset> found;
  std::vector<Subset> work{fg(Subset(a_.size())).members()};
  found.insert(work.front());
  while (!work.empty()) {
    Subset f = std::move(work.back());
    work.pop_back();
    for (Element e = 0; e < a_.size(); ++e) {
      if (f.contains(e)) continue;
      Subset g = f;
      g.insert(e);
      Subset h = fg(g).members();
      if (found.insert(h).second) work.push_back(std::move(h));
    }
  }
  std::vector<Filter> out;
  for (const auto& s : found) out.push_back(Filter(s));
  all_filters_ = std::move(out);
  return *all_filters_;
}

Subset fg_relative(const FiniteAlgebra& a, const Congruence& theta, const Subset& x,
                   const LogicSpec& l, const Budget& budget) {
  auto q = quotient(a, theta);
  FilterSystem fs(q.algebra, l, budget);
  auto g = fs.fg(image(q.projection, x, q.algebra.size()));
  return preimage(q.projection, g.members());
}

}  // namespace aal
