#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aal/congruence.hpp"
#include "aal/construct.hpp"
#include "oracles.hpp"

using namespace aal;
using fixtures::alg;
using fixtures::logic;
using fixtures::set;

namespace {

std::vector<std::uint64_t> masks(const std::vector<Filter>& fs) {
  std::vector<std::uint64_t> out;
  for (const auto& f : fs) out.push_back(oracle::to_mask(f.members()));
  std::sort(out.begin(), out.end());
  return out;
}

Rule rule(const FiniteAlgebra& a, std::vector<std::string> prem, const std::string& concl) {
  Rule r;
  for (const auto& p : prem) r.premises.push_back(parse_term(p, a.signature()));
  r.conclusion = parse_term(concl, a.signature());
  return r;
}

bool valid_oracle(const Rule& r, const FiniteAlgebra& b, std::uint64_t d) {
  auto vars = r.variables();
  bool ok = true;
  oracle::tuples(b.size(), vars.size(), [&](const std::vector<Element>& t) {
    std::map<std::string, Element> v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = t[i];
    for (const auto& p : r.premises)
      if (!(d >> oracle::eval(p, b, v) & 1)) return;
    if (!(d >> oracle::eval(r.conclusion, b, v) & 1)) ok = false;
  });
  return ok;
}

Term random_term(std::mt19937& rng, const Signature& sig, std::size_t depth) {
  static const std::vector<std::string> vars = {"x", "y", "z"};
  std::uniform_int_distribution<std::size_t> pick(0, sig.size() + vars.size() - 1);
  std::size_t c = depth == 0 ? sig.size() + pick(rng) % vars.size() : pick(rng);
  if (c >= sig.size()) return Term::variable(vars[c - sig.size()]);
  std::vector<Term> args;
  for (unsigned i = 0; i < sig[c].arity; ++i) args.push_back(random_term(rng, sig, depth - 1));
  return Term::apply(sig[c].name, std::move(args));
}

}  // namespace

TEST_CASE("rule_valid_in_matrix") {
  auto k3 = alg("K3");
  Matrix kl{k3, set(k3, "1")};
  CHECK(rule_valid_in_matrix(rule(k3, {"x", "(and x (or (neg x) y))"}, "y"), kl));
  CHECK(rule_valid_in_matrix(rule(k3, {"x"}, "x"), kl));
  CHECK_FALSE(rule_valid_in_matrix(rule(k3, {"x"}, "(neg x)"), kl));

  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    Rule r;
    int np = i % 3;
    for (int p = 0; p < np; ++p) r.premises.push_back(random_term(rng, k3.signature(), 2));
    r.conclusion = random_term(rng, k3.signature(), 2);
    CHECK(rule_valid_in_matrix(r, kl) == valid_oracle(r, k3, 4));
  }
}

TEST_CASE("PWK filters on WK3") {
  auto wk3 = alg("WK3");
  FilterSystem fs(wk3, logic("PWK", wk3));
  CHECK(fs.is_filter(set(wk3, "1,½")));
  CHECK_FALSE(fs.is_filter(set(wk3, "1")));
  CHECK(fs.is_filter(Subset::full(3)));
  CHECK(wk3.format(fs.fg(Subset(3)).members()) == "{1,½}");
  CHECK(fs.fg(Subset::full(3)).members().is_full());
  CHECK(fs.all_filters().front().members() == set(wk3, "1,½"));
  CHECK_THROWS_AS(fs.checked(set(wk3, "1")), NotAFilter);
  CHECK(fs.checked(set(wk3, "1,½")).contains(2));
}

TEST_CASE("KL filters on K3") {
  auto k3 = alg("K3");
  FilterSystem fs(k3, logic("KL", k3));
  REQUIRE(fs.all_filters().size() == 2);
  CHECK(fs.all_filters()[0].members() == set(k3, "1"));
  CHECK(fs.all_filters()[1].members().is_full());
  CHECK(fs.exact());
}

TEST_CASE("all_filters of degenerate logics") {
  auto k3 = alg("K3");
  FilterSystem id(k3, logic("ID", k3));
  CHECK(id.all_filters().size() == 8);
  auto box = alg("box5");
  FilterSystem one(box, logic("ONE", box));
  CHECK(one.all_filters().size() == 16);
  for (const auto& f : one.all_filters()) CHECK(f.contains(*box.element_named("1")));
  FilterSystem idb(box, logic("ID", box));
  CHECK(idb.fg(Subset(5)).members().empty());
}

TEST_CASE("fg and its trace") {
  auto l4 = alg("L4");
  FilterSystem fs(l4, logic("LUK", l4));
  auto x = set(l4, "⅔");
  CHECK(fs.fg(x).members().is_full());
  auto tr = fs.fg_trace(x);
  CHECK(tr.front() == x);
  CHECK(tr.back().is_full());
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) CHECK(tr[i].is_subset_of(tr[i + 1]));
  CHECK(fs.fg(set(l4, "1")).members() == set(l4, "1"));
}

TEST_CASE("fg_relative") {
  auto wk3 = alg("WK3");
  auto pwk = logic("PWK", wk3);
  FilterSystem fs(wk3, pwk);
  for (const auto& x : all_subsets(3)) {
    CHECK(fg_relative(wk3, Congruence::identity(3), x, pwk) == fs.fg(x).members());
    CHECK(fg_relative(wk3, Congruence::total(3), x, pwk).is_full());
  }
  auto k3 = alg("K3");
  CHECK(fg_relative(k3, Congruence::total(3), Subset(3), logic("ID", k3)).empty());

  auto box = alg("box5");
  auto th1 = Congruence::from_blocks(5, {{0, 1}, {2, 4}, {3}});
  CHECK(fg_relative(box, th1, set(box, "a1,a2"), logic("ONE", box)).contains(*box.element_named("b")));
}

TEST_CASE("fg_relative is the least compatible filter") {
  for (const auto& [an, ln] : std::vector<std::pair<std::string, std::string>>{
           {"box5", "ONE"}, {"WK3", "PWK"}, {"M3", "ORDER"}, {"B4", "ORDER"}, {"K3", "KL"},
           {"K3", "LP"}, {"DM4", "ETL"}, {"L4", "LUK"}, {"ch2", "KG"}}) {
    auto a = alg(an);
    auto l = logic(ln, a);
    FilterSystem fs(a, l);
    auto fams = oracle::filters(fs);
    auto cons = oracle::congruences(a);
    for (const auto& p : cons) {
      std::vector<std::uint64_t> compat;
      for (auto f : fams)
        if (oracle::compatible(p, f)) compat.push_back(f);
      for (const auto& x : subsets_up_to(a.size(), 2)) {
        auto want = oracle::meet_above(compat, oracle::to_mask(x), a.size());
        CHECK_MESSAGE(oracle::to_mask(fg_relative(a, Congruence(p), x, l)) == want, an << " " << ln);
      }
    }
    // Monotone along inclusions of congruences.
    for (const auto& p : cons)
      for (const auto& q : cons)
        if (oracle::refines(p, q))
          for (const auto& x : subsets_up_to(a.size(), 1))
            CHECK(fg_relative(a, Congruence(p), x, l).is_subset_of(fg_relative(a, Congruence(q), x, l)));
  }
}

TEST_CASE("rule-presented filters agree with the brute-force oracle") {
  for (const auto& [an, ln] : std::vector<std::pair<std::string, std::string>>{
           {"WK3", "PWK"}, {"WK3c", "PWK"}, {"M3", "ORDER"}, {"B4", "ORDER"}, {"L3", "LUK"},
           {"L4", "LUK"}, {"ch2", "KG"}, {"ch3", "KG"}, {"fepbad", "FEPBAD"}, {"box5", "ONE"}}) {
    auto a = alg(an);
    FilterSystem fs(a, logic(ln, a));
    std::vector<std::uint64_t> want;
    const auto& rules = std::get<RulePresented>(fs.logic().body).rules;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.size()); ++m) {
      bool f = oracle::rule_filter(a, rules, m);
      CHECK(fs.is_filter(oracle::to_subset(a.size(), m)) == f);
      if (f) want.push_back(m);
    }
    CHECK_MESSAGE(masks(fs.all_filters()) == want, an << " " << ln);
  }
}

TEST_CASE("matrix filters: semantic and term-clone methods agree") {
  std::vector<std::pair<FiniteAlgebra, std::string>> cases;
  auto k3 = alg("K3");
  for (const auto& u : enumerate_subalgebras(k3))
    if (u.count() == 2)
      for (const auto* l : {"KL", "LP", "ETL"}) cases.push_back({subalgebra(k3, u).algebra, l});
  cases.push_back({alg("WK3"), "PWKM"});
  for (const auto& u : enumerate_subalgebras(alg("WK3")))
    if (u.count() == 2) cases.push_back({subalgebra(alg("WK3"), u).algebra, "PWKM"});
  auto triv = trivial_algebra(k3.signature());
  cases.push_back({triv, "KL"});

  for (const auto& [a, ln] : cases) {
    auto l = logic(ln, a);
    FilterSystem sem(a, l, {}, MatrixMethod::semantic);
    FilterSystem clo(a, l, {}, MatrixMethod::clone);
    CHECK_MESSAGE(masks(sem.all_filters()) == masks(clo.all_filters()), a.name() << " " << ln);
    for (const auto& x : all_subsets(a.size()))
      CHECK(sem.fg(x).members() == clo.fg(x).members());
  }
}

TEST_CASE("matrix filters are closed under valid rules") {
  std::mt19937 rng(9);
  auto k3 = alg("K3");
  auto sq = power(k3, 2);
  for (const auto& [bn, ln, d] : std::vector<std::tuple<std::string, std::string, std::uint64_t>>{
           {"K3", "KL", 4}, {"K3", "LP", 6}, {"DM4", "ETL", 8}}) {
    auto b = alg(bn);
    std::vector<Rule> valid;
    while (valid.size() < 60) {
      Rule r;
      int np = 1 + static_cast<int>(rng() % 2);
      for (int p = 0; p < np; ++p) r.premises.push_back(random_term(rng, b.signature(), 2));
      r.conclusion = random_term(rng, b.signature(), 2);
      if (valid_oracle(r, b, d)) valid.push_back(r);
    }
    for (const auto& a : {k3, sq, alg("DM4")}) {
      FilterSystem fs(a, logic(ln, a));
      for (const auto& f : fs.all_filters())
        CHECK(oracle::rule_filter(a, valid, oracle::to_mask(f.members())));
    }
  }
}

TEST_CASE("rule and matrix presentations of PWK agree") {
  auto wk3 = alg("WK3");
  auto sq = power(wk3, 2);
  std::vector<FiniteAlgebra> as{wk3, sq};
  for (const auto& u : enumerate_subalgebras(sq))
    if (!u.empty() && !u.is_full()) as.push_back(subalgebra(sq, u).algebra);
  for (const auto& a : as) {
    FilterSystem r(a, logic("PWK", a));
    FilterSystem m(a, logic("PWKM", a));
    CHECK_MESSAGE(masks(r.all_filters()) == masks(m.all_filters()), a.name());
  }
}

TEST_CASE("a variable bound below the carrier size only refutes") {
  auto k3 = alg("K3");
  for (const auto* ln : {"KL", "LP", "ETL"}) {
    for (std::size_t bound : {1, 2}) {
      auto l = logic(ln, k3);
      std::get<MatrixDetermined>(l.body).variable_bound = bound;
      FilterSystem bounded(k3, l);
      CHECK_FALSE(bounded.exact());
      FilterSystem exact(k3, logic(ln, k3));
      for (const auto& x : all_subsets(3)) {
        if (exact.is_filter(x)) CHECK(bounded.is_filter(x));
        CHECK(bounded.fg(x).members().is_subset_of(exact.fg(x).members()));
      }
    }
  }
  // At two variables KL already excludes everything but {1} and K3.
  auto l = logic("KL", k3);
  std::get<MatrixDetermined>(l.body).variable_bound = 2;
  FilterSystem two(k3, l);
  CHECK(masks(two.all_filters()) == std::vector<std::uint64_t>{4, 7});
}

TEST_CASE("fg is a closure operator equal to the meet of filters above") {
  for (const auto& [an, ln] : std::vector<std::pair<std::string, std::string>>{
           {"WK3", "PWK"}, {"K3", "KL"}, {"K3", "LP"}, {"DM4", "ETL"}, {"L5", "LUK"},
           {"M3", "ORDER"}, {"ch3", "KG"}, {"box5", "ONE"}}) {
    auto a = alg(an);
    FilterSystem fs(a, logic(ln, a));
    auto fams = oracle::filters(fs);
    CHECK(masks(fs.all_filters()) == fams);
    for (const auto& x : all_subsets(a.size())) {
      auto g = fs.fg(x).members();
      CHECK(oracle::to_mask(g) == oracle::meet_above(fams, oracle::to_mask(x), a.size()));
      CHECK(x.is_subset_of(g));
      CHECK(fs.fg(g).members() == g);
      for (Element e = 0; e < a.size(); ++e) {
        Subset y = x;
        y.insert(e);
        CHECK(g.is_subset_of(fs.fg(y).members()));
      }
    }
  }
}

TEST_CASE("homomorphic preimages of filters are filters") {
  for (const auto& [an, bn, ln] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"WK3", "WK3", "PWK"}, {"K3", "K3", "KL"}, {"K3", "DM4", "ETL"}, {"DM4", "K3", "LP"},
           {"ch2", "ch3", "KG"}, {"B4", "M3", "ORDER"}, {"M3", "B4", "ORDER"}}) {
    auto a = alg(an), b = alg(bn);
    FilterSystem fa(a, logic(ln, a)), fb(b, logic(ln, b));
    for (const auto& h : enumerate_homomorphisms(a, b))
      for (const auto& g : fb.all_filters()) CHECK(fa.is_filter(preimage(h, g.members())));
  }
}

TEST_CASE("fg on a product is inside the product of factor fg") {
  for (const auto& [xn, yn, ln] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"WK3", "WK3", "PWK"}, {"K3", "K3", "KL"}, {"K3", "K3", "LP"}, {"B4", "M3", "ORDER"}}) {
    std::vector<FiniteAlgebra> fs{alg(xn), alg(yn)};
    auto p = direct_product(fs);
    auto l = logic(ln, p.algebra);
    FilterSystem fp(p.algebra, l), f0(fs[0], l), f1(fs[1], l);
    for (const auto& x : subsets_up_to(p.algebra.size(), 2)) {
      auto g = fp.fg(x).members();
      Subset x0(fs[0].size()), x1(fs[1].size());
      for (Element e : x.elements()) {
        x0.insert(p.project(e, 0));
        x1.insert(p.project(e, 1));
      }
      auto g0 = f0.fg(x0).members(), g1 = f1.fg(x1).members();
      for (Element e : g.elements()) {
        CHECK(g0.contains(p.project(e, 0)));
        CHECK(g1.contains(p.project(e, 1)));
      }
    }
  }
}

TEST_CASE("signature mismatches are reported") {
  auto wk3 = alg("WK3");
  auto k3 = alg("K3");
  CHECK_THROWS_AS(FilterSystem(wk3, logic("KL", k3)), ArityMismatch);
  CHECK_THROWS_AS(logic("ORDER", wk3), ArityMismatch);
}
