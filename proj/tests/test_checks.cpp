#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aal/checks.hpp"
#include "aal/congruence.hpp"
#include "aal/construct.hpp"
#include "oracles.hpp"

using namespace aal;
using fixtures::alg;
using fixtures::logic;
using fixtures::ws;

namespace {

EDCFCandidate cand(const std::string& n, const Signature& sig) { return ws().candidate(n, sig); }

Testbed single(const FiniteAlgebra& a) {
  Testbed t;
  t.name = a.name();
  t.algebras = {a};
  t.provenance = {"generator"};
  return t;
}

std::string eqs(const EquationSet& s) {
  std::string out;
  for (const auto& e : s) out += (out.empty() ? "" : "; ") + e.to_string();
  return out;
}

}  // namespace

TEST_CASE("template expansion") {
  auto k3 = alg("K3");
  CandidateTemplate t;
  t.leq = "join";
  t.units = {{"and", "one"}, {"or", "zero"}};
  CHECK(expand_term("(fold and _)", t, 3, {}, k3.signature()).to_string() == "(and (and x1 x2) x3)");
  CHECK(expand_term("(fold or (neg _))", t, 2, {}, k3.signature()).to_string() == "(or (neg x1) (neg x2))");
  CHECK(expand_term("(fold and _)", t, 1, {}, k3.signature()).to_string() == "x1");
  CHECK(expand_term("(fold and _)", t, 0, {}, k3.signature()).to_string() == "one");
  CHECK(expand_equation("(leq x1 y)", t, 1, {}, k3.signature()).to_string() == "(or x1 y) = y");
  t.leq = "meet";
  CHECK(expand_equation("(leq x1 y)", t, 1, {}, k3.signature()).to_string() == "(and x1 y) = x1");

  auto l3 = alg("L3");
  CandidateTemplate u;
  u.units = {{"and", "one"}};
  CHECK(expand_term("(iter k fusion one (fold and _))", u, 2, {{"k", 2}}, l3.signature()).to_string() ==
        "(fusion (and x1 x2) (fusion (and x1 x2) one))");
  CHECK(expand_term("(iter 0 fusion one x1)", u, 1, {}, l3.signature()).to_string() == "one");
  CHECK(expand_term("(iter 1 fusion x1)", u, 1, {}, l3.signature()).to_string() == "(fusion x1 x1)");

  CandidateTemplate w;
  w.abbreviations["and"] = {{"u", "v"}, "(neg (or (neg u) (neg v)))"};
  auto wk3 = alg("WK3");
  CHECK(expand_term("(and x1 y)", w, 1, {}, wk3.signature()).to_string() ==
        "(neg (or (neg x1) (neg y)))");
  CHECK_THROWS_AS(expand_term("(frob x1)", w, 1, {}, wk3.signature()), ArityMismatch);
}

TEST_CASE("materialized candidates") {
  auto k3 = alg("K3");
  auto kl = cand("kl-global", k3.signature());
  CHECK(kl.n_max == 3);
  REQUIRE(kl.family(2).size() == 1);
  CHECK(eqs(kl.family(2)[0]) == "(or (and x1 x2) (or (or (neg x1) (neg x2)) y)) = (or (or (neg x1) (neg x2)) y)");
  CHECK(eqs(kl.family(0)[0]) == "(or one (or zero y)) = (or zero y)");

  auto lp = cand("lp-global", k3.signature());
  CHECK(eqs(lp.family(0)[0]) == "(or (neg y) y) = y");

  auto wk3 = alg("WK3");
  auto pwk = cand("pwk-local", wk3.signature());
  // One excluded-middle set plus one set per nonempty subset of x1..xn.
  CHECK(pwk.family(0).size() == 1);
  CHECK(pwk.family(2).size() == 4);
  CHECK(pwk.family(3).size() == 8);
  CHECK(eqs(pwk.family(1)[1]) == "(or x1 y) = y");

  auto kg = cand("kg-local", alg("ch2").signature());
  CHECK(kg.family(1).size() == 5);
  CHECK(eqs(kg.family(1)[1]) == "(and (and x1 (box x1)) y) = (and x1 (box x1))");
  CHECK_THROWS_AS(kg.family(3), ConfigError);

  EDCFCandidate bad;
  bad.n_max = 1;
  bad.families[1] = {{Equation{Term::variable("x2"), Term::variable("y")}}};
  CHECK_THROWS_AS(validate_candidate(bad), ConfigError);
}

TEST_CASE("generate_testbed") {
  auto wk3 = alg("WK3");
  auto t = generate_testbed({wk3}, 2, true);
  CHECK(t.algebras[0].name() == "WK3");
  bool has_square = false;
  for (const auto& a : t.algebras) has_square = has_square || a.size() == 9;
  CHECK(has_square);
  auto sq = power(wk3, 2);
  for (const auto& u : enumerate_subalgebras(sq)) {
    if (u.empty()) continue;
    auto s = subalgebra(sq, u).algebra;
    bool found = false;
    for (const auto& a : t.algebras) found = found || isomorphic(a, s);
    CHECK(found);
  }
  for (std::size_t i = 0; i < t.algebras.size(); ++i)
    for (std::size_t j = i + 1; j < t.algebras.size(); ++j)
      CHECK_FALSE(isomorphic(t.algebras[i], t.algebras[j]));

  auto g = generate_testbed({wk3}, 1, false);
  CHECK(g.algebras.size() == 1);
  CHECK(g.provenance == std::vector<std::string>{"generator"});

  auto k = generate_testbed({alg("K3")}, 2, false);
  bool nine = false;
  for (const auto& a : k.algebras) nine = nine || a.size() == 9;
  CHECK(nine);
}

TEST_CASE("check_edcf on the Kleene, LP and PWK examples") {
  auto k3 = alg("K3");
  auto tb = ws().testbed("k3-isp");
  CHECK(check_edcf(logic("KL", k3), tb, cand("kl-global", k3.signature()), Variant::global).outcome ==
        Outcome::pass);
  CHECK(check_edcf(logic("LP", k3), tb, cand("lp-global", k3.signature()), Variant::global).outcome ==
        Outcome::pass);
  // The KL candidate does not define LP filters.
  auto v = check_edcf(logic("LP", k3), tb, cand("kl-global", k3.signature()), Variant::global);
  CHECK(v.outcome == Outcome::fail);
  CHECK(v.witness.has_value());

  auto wk3 = alg("WK3");
  auto wt = ws().testbed("wk3-isp");
  CHECK(check_edcf(logic("PWK", wk3), wt, cand("pwk-local", wk3.signature()), Variant::local).outcome ==
        Outcome::pass);
}

TEST_CASE("failing edcf verdicts replay through fg and the equations") {
  auto k3 = alg("K3");
  auto tb = ws().testbed("k3-isp");
  auto v = check_edcf(logic("LP", k3), tb, cand("kl-global", k3.signature()), Variant::global);
  REQUIRE(v.outcome == Outcome::fail);
  const auto& w = *v.witness;
  const FiniteAlgebra* a = nullptr;
  for (const auto& x : tb.algebras)
    if (x.name() == w.algebra) a = &x;
  REQUIRE(a);
  std::vector<Element> tuple;
  for (const auto& s : w.tuple) tuple.push_back(*a->element_named(s));
  Element b = *a->element_named(*w.element);
  FilterSystem fs(*a, logic("LP", *a));
  bool in_fg = fs.fg(tuple).contains(b);
  auto c = cand("kl-global", k3.signature());
  Valuation val{{"y", b}};
  for (std::size_t i = 0; i < tuple.size(); ++i) val["x" + std::to_string(i + 1)] = tuple[i];
  bool holds = true;
  for (const auto& e : c.family(tuple.size())[0]) holds = holds && holds_equation(e, *a, val);
  CHECK(in_fg != holds);
}

TEST_CASE("check_edcf_theta_form") {
  auto k3 = alg("K3");
  auto kq = ws().class_spec("k3-q", k3.signature());
  auto kl = logic("KL", k3);
  auto c = cand("kl-global", k3.signature());
  auto tb = ws().testbed("k3-isp");
  for (const auto& a : tb.algebras) {
    auto plain = check_edcf(kl, single(a), c, Variant::global);
    auto theta = check_edcf_theta_form(kl, {a}, kq, c, Variant::global);
    CHECK(plain.outcome == theta.outcome);
  }

  auto box = alg("box5");
  EDCFCandidate eq1;
  eq1.name = "x1=y";
  eq1.variant = Variant::global;
  eq1.n_max = 1;
  eq1.families[0] = {{Equation{Term::variable("y"), Term::apply("one")}}};
  eq1.families[1] = {{Equation{Term::variable("x1"), Term::variable("y")}}};
  auto fail = check_edcf_theta_form(logic("ONE", box), {box}, ws().class_spec("alpha12", box.signature()),
                                    eq1, Variant::global);
  CHECK(fail.outcome == Outcome::fail);
  REQUIRE(fail.witness);
  CHECK(fail.witness->tuple.size() == 1);
  CHECK(fail.witness->element == std::optional<std::string>("1"));

  auto triv = trivial_algebra(box.signature());
  auto all = ws().class_spec("all", box.signature());
  auto one = cand("one-identity", box.signature());
  CHECK(check_edcf_theta_form(logic("ONE", box), {triv}, all, one, Variant::local).outcome == Outcome::pass);
  CHECK(check_edcf_theta_form(logic("ID", box), {triv}, all, one, Variant::local).outcome == Outcome::fail);
}

TEST_CASE("compare_candidates") {
  auto l3 = alg("L3");
  auto a = cand("luk-and-local", l3.signature());
  auto b = cand("luk-fusion-local", l3.signature());
  auto tb = ws().testbed("luk-chains");
  CHECK(compare_candidates(a, a, tb).outcome == Outcome::pass);
  CHECK(compare_candidates(a, b, tb).outcome == Outcome::pass);

  auto w = alg("WK3c");
  auto v = compare_candidates(cand("wk3-top", w.signature()), cand("wk3-excluded-middle", w.signature()),
                              ws().testbed("wk3c"));
  CHECK(v.outcome == Outcome::fail);
  REQUIRE(v.witness);
  CHECK(v.witness->element == std::optional<std::string>("½"));
}

TEST_CASE("absolute FEP") {
  auto wk3 = alg("WK3");
  CHECK(absolute_fep_check(logic("PWK", wk3), ws().testbed("wk3-isp")).outcome == Outcome::pass);
  auto box = alg("box5");
  CHECK(absolute_fep_check(logic("ONE", box), ws().testbed("box5")).outcome == Outcome::pass);
  auto bad = alg("fepbad");
  auto v = absolute_fep_check(logic("FEPBAD", bad), ws().testbed("fepbad"));
  CHECK(v.outcome == Outcome::fail);
  CHECK(v.witness.has_value());
}

TEST_CASE("FEP with base filters") {
  auto box = alg("box5");
  CHECK(fep_check(logic("ONE", box), ws().testbed("box5")).outcome == Outcome::pass);
  auto bad = alg("fepbad");
  CHECK(fep_check(logic("FEPBAD", bad), ws().testbed("fepbad")).outcome == Outcome::fail);
  auto wk3 = alg("WK3");
  CHECK(fep_check(logic("PWK", wk3), ws().testbed("wk3-isp")).outcome != Outcome::inconclusive);
}

TEST_CASE("factor-determined compact filters") {
  auto wk3 = alg("WK3");
  auto sq = power(wk3, 2);
  FactorOptions fo;
  fo.pinned = std::vector<Element>{*sq.element_named("<½,0>")};
  auto v = factor_determined_check(logic("PWK", wk3), ws().testbed("wk3"), fo);
  CHECK(v.outcome == Outcome::fail);
  REQUIRE(v.witness);
  CHECK(v.witness->tuple == std::vector<std::string>{"<½,0>"});
  CHECK(v.witness->element == std::optional<std::string>("<1,0>"));

  // With only the axiom 1, Fg(<0,0>) = {<0,0>,<1,1>} misses <1,0>.
  auto box = alg("box5");
  auto one = factor_determined_check(logic("ONE", box), ws().testbed("box5"), {});
  CHECK(one.outcome == Outcome::fail);
  REQUIRE(one.witness);
  CHECK(one.witness->tuple == std::vector<std::string>{"<0,0>"});
  CHECK(one.witness->element == std::optional<std::string>("<1,0>"));
  auto k3 = alg("K3");
  CHECK(factor_determined_check(logic("KL", k3), single(k3), {}).outcome == Outcome::pass);
  FactorOptions rel;
  rel.absolute = false;
  CHECK(factor_determined_check(logic("KL", k3), single(k3), rel).outcome == Outcome::pass);
}

TEST_CASE("test algebras") {
  auto box = alg("box5");
  auto triv = trivial_algebra(box.signature());
  TestAlgebraCandidate c{triv, {}, 0};
  CHECK(test_algebra_check(logic("ONE", box), single(triv), c).outcome == Outcome::pass);

  auto wk3 = alg("WK3");
  CHECK(test_algebra_search(logic("PWK", wk3), ws().testbed("wk3-isp"), 1).outcome != Outcome::pass);
}

TEST_CASE("smallest relative congruence") {
  auto box = alg("box5");
  RelcongOptions ro;
  ro.tuple = std::vector<Element>{*box.element_named("a1"), *box.element_named("a2")};
  ro.element = *box.element_named("b");
  auto v = smallest_relcong_check(logic("ONE", box), box, ws().class_spec("alpha12", box.signature()), ro);
  CHECK(v.outcome == Outcome::fail);

  auto k3 = alg("K3");
  RelcongOptions in;
  in.tuple = std::vector<Element>{2};
  in.element = 2;
  CHECK(smallest_relcong_check(logic("KL", k3), k3, ws().class_spec("k3-q", k3.signature()), in).outcome ==
        Outcome::pass);
}

TEST_CASE("smallest relative congruence for the class of all algebras") {
  // S is a union of upsets here: b is related to a1 or to a2 or to 1.
  auto box = alg("box5");
  auto v = smallest_relcong_check(logic("ONE", box), box, ws().class_spec("all", box.signature()));
  CHECK(v.outcome == Outcome::fail);
  REQUIRE(v.witness);
  CHECK(v.witness->tuple == std::vector<std::string>{"a1"});
  CHECK(v.witness->element == std::optional<std::string>("a2"));

  for (const auto& [an, ln] : std::vector<std::pair<std::string, std::string>>{
           {"WK3", "PWK"}, {"K3", "KL"}, {"K3", "LP"}, {"DM4", "ETL"},
           {"M3", "ORDER"}, {"B4", "ORDER"}, {"L4", "LUK"}, {"L5", "LUK"}, {"ch2", "KG"}}) {
    auto a = alg(an);
    CheckOptions opt;
    opt.arity_cap = 2;
    auto v = smallest_relcong_check(logic(ln, a), a, ws().class_spec("all", a.signature()), {}, opt);
    CHECK_MESSAGE(v.outcome == Outcome::pass, an << " " << ln);
  }
}

TEST_CASE("dually Brouwerian filter lattices") {
  auto m3 = alg("M3");
  CHECK(dually_brouwerian_check(logic("ORDER", m3), m3).outcome == Outcome::fail);
  auto b4 = alg("B4");
  CHECK(dually_brouwerian_check(logic("ORDER", b4), b4).outcome == Outcome::pass);
  auto triv = trivial_algebra(m3.signature());
  CHECK(dually_brouwerian_check(logic("ORDER", m3), triv).outcome == Outcome::pass);
  CHECK(dually_brouwerian_check(logic("ID", m3), triv).outcome == Outcome::pass);
}

TEST_CASE("Leibniz probes") {
  auto wk3 = alg("WK3");
  auto sq = power(wk3, 2);
  CHECK(leibniz_probe(logic("PWK", wk3), single(sq), LeibnizMode::monotone).outcome == Outcome::fail);
  auto triv = trivial_algebra(wk3.signature());
  CHECK(leibniz_probe(logic("PWK", wk3), single(triv), LeibnizMode::monotone).outcome == Outcome::pass);
  CHECK(leibniz_probe(logic("PWK", wk3), single(triv), LeibnizMode::injective).outcome == Outcome::pass);
  auto k3 = alg("K3");
  auto id = leibniz_probe(logic("ID", k3), single(k3), LeibnizMode::monotone);
  CHECK(id.outcome != Outcome::inconclusive);
}

TEST_CASE("counterexample search") {
  auto wk3 = alg("WK3");
  auto pwk = logic("PWK", wk3);
  auto stages = product_stages({wk3}, 2, false);
  auto v = search_counterexample(stages, [&](const Testbed& t) {
    return factor_determined_check(pwk, t, {});
  });
  CHECK(v.outcome == Outcome::fail);
  REQUIRE(v.witness);
  CHECK(v.witness->algebra == "WK3xWK3");
  CHECK(v.witness->tuple == std::vector<std::string>{"<½,0>"});
  CHECK(v.witness->element == std::optional<std::string>("<1,0>"));
  bool noted = false;
  for (const auto& n : v.notes) noted = noted || n.find("product arity 1") != std::string::npos;
  CHECK(noted);

  std::vector<FiniteAlgebra> chains;
  for (const auto* n : {"ch1", "ch2", "ch3", "ch4"}) chains.push_back(alg(n));
  for (int k = 0; k <= 2; ++k) {
    auto c = cand("kg-global-k" + std::to_string(k), chains[0].signature());
    auto kg = logic("KG", chains[0]);
    auto r = search_counterexample(prefix_stages(chains), [&](const Testbed& t) {
      return check_edcf(kg, t, c, Variant::global);
    });
    CHECK(r.outcome == Outcome::fail);
    REQUIRE(r.witness);
    CHECK(r.witness->algebra == "ch" + std::to_string(k + 2));
  }

  CHECK(search_counterexample({}, [](const Testbed&) { return Verdict{}; }).outcome == Outcome::inconclusive);
}

TEST_CASE("variant monotonicity and cross-checker consistency") {
  struct Row {
    std::string cand, logic, testbed;
  };
  std::vector<Row> rows = {{"kl-global", "KL", "k3-isp"},         {"lp-global", "LP", "k3-isp"},
                           {"kl-global", "LP", "k3-isp"},         {"pwk-local", "PWK", "wk3-isp"},
                           {"kg-local", "KG", "modal-chains"},    {"kg-global-k1", "KG", "modal-chains"},
                           {"luk-and-local", "LUK", "luk-chains"}, {"luk-global-k2", "LUK", "luk-chains"},
                           {"one-identity", "ONE", "box5"},       {"wk3-top", "PWK", "wk3c"},
                           {"wk3-excluded-middle", "PWK", "wk3c"}};
  for (const auto& r : rows) {
    auto tb = ws().testbed(r.testbed);
    const auto& sig = tb.algebras.front().signature();
    auto l = ws().logic(r.logic, sig);
    auto c = ws().candidate(r.cand, sig);
    bool single_set = true;
    for (const auto& [n, sets] : c.families) single_set = single_set && sets.size() == 1;
    auto local = check_edcf(l, tb, c, Variant::local).outcome;
    if (single_set && check_edcf(l, tb, c, Variant::global).outcome == Outcome::pass)
      CHECK_MESSAGE(local == Outcome::pass, r.cand);
    if (local == Outcome::pass)
      CHECK(check_edcf(l, tb, c, Variant::parametrized_local).outcome == Outcome::pass);
    if (single_set && check_edcf(l, tb, c, Variant::parametrized).outcome == Outcome::pass) {
      bool products = false;
      for (const auto& p : tb.provenance) products = products || p == "product";
      if (products) CHECK(factor_determined_check(l, tb, {}).outcome == Outcome::pass);
    }
    bool sub_closed = false;
    for (const auto& p : tb.provenance) sub_closed = sub_closed || p == "subalgebra";
    if (local == Outcome::pass && sub_closed)
      CHECK_MESSAGE(absolute_fep_check(l, tb).outcome == Outcome::pass, r.cand);
  }
}

TEST_CASE("verdicts serialize and round-trip") {
  auto wk3 = alg("WK3");
  auto v = factor_determined_check(logic("PWK", wk3), ws().testbed("wk3"), {});
  v.replay = {"check", "fdc", "--logic", "PWK"};
  v.notes = {"a note"};
  CHECK(verdict_from_json(json::parse(to_json(v).dump())) == v);
  auto text = to_text(v);
  CHECK(text.rfind("FAIL", 0) == 0);
  CHECK(text.find("<1,0>") != std::string::npos);
  CHECK(exit_code(Outcome::pass) == 0);
  CHECK(exit_code(Outcome::fail) == 1);
  CHECK(exit_code(Outcome::inconclusive) == 4);
  CHECK(outcome_from_string("inconclusive") == Outcome::inconclusive);
  CHECK(variant_from_string("parametrized_local") == Variant::parametrized_local);
  CHECK_THROWS_AS(variant_from_string("bogus"), ConfigError);
}
