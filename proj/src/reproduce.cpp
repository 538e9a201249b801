#include "aal/reproduce.hpp"

#include <chrono>
#include <sstream>

#include "aal/construct.hpp"

namespace aal {

namespace {

class Run {
 public:
  explicit Run(ReproduceResult& r) : r_(r) {}

  void expect(bool ok, const std::string& what, const std::string& observed = "") {
    r_.ok &= ok;
    r_.lines.push_back((ok ? "  ok        " : "  MISMATCH  ") + what);
    if (!ok && !observed.empty()) r_.lines.push_back("            observed: " + observed);
  }

  const Verdict& verdict(Verdict v, Outcome expected, const std::string& what,
                         std::vector<std::string> replay) {
    v.replay = std::move(replay);
    const bool ok = v.outcome == expected;
    std::string line = what + ": " + to_string(v.outcome);
    if (ok && expected == Outcome::fail) line += " (as expected)";
    expect(ok, line,
           ok ? "" : "expected " + to_string(expected) + ", got " + to_string(v.outcome) + ": " +
                         v.summary);
    r_.verdicts.push_back(std::move(v));
    return r_.verdicts.back();
  }

  void note(const std::string& s) { r_.lines.push_back("            " + s); }

 private:
  ReproduceResult& r_;
};

Testbed single(const FiniteAlgebra& a) {
  Testbed t;
  t.name = a.name();
  t.algebras.push_back(a);
  t.provenance.push_back("generator");
  return t;
}

std::vector<std::string> edcf_replay(const std::string& logic, const std::string& cand,
                                     const std::string& testbed, Variant v) {
  return {"check", "edcf",        "--logic",   logic,      "--candidate",
          cand,    "--testbed",   testbed,     "--variant", to_string(v)};
}

void edcf_example(Run& run, Workspace& ws, const CheckOptions& opt, const std::string& logic,
                  const std::string& cand, const std::string& testbed, Variant v,
                  Outcome expected) {
  Testbed t = ws.testbed(testbed);
  const Signature& sig = t.algebras.front().signature();
  LogicSpec l = ws.logic(logic, sig);
  EDCFCandidate c = ws.candidate(cand, sig);
  run.verdict(check_edcf(l, t, c, v, opt), expected,
              cand + " " + to_string(v) + " on " + testbed + " (" +
                  std::to_string(t.algebras.size()) + " algebras)",
              edcf_replay(logic, cand, testbed, v));
}

void kleene_edcf(Run& run, Workspace& ws, const CheckOptions& opt) {
  edcf_example(run, ws, opt, "KL", "kl-global", "k3-isp", Variant::global, Outcome::pass);
}

void lp_edcf(Run& run, Workspace& ws, const CheckOptions& opt) {
  edcf_example(run, ws, opt, "LP", "lp-global", "k3-isp", Variant::global, Outcome::pass);
}

void pwk_local_edcf(Run& run, Workspace& ws, const CheckOptions& opt) {
  edcf_example(run, ws, opt, "PWK", "pwk-local", "wk3-isp", Variant::local, Outcome::pass);
  Testbed t = ws.testbed("wk3-isp");
  LogicSpec l = ws.logic("PWK", t.algebras.front().signature());
  run.verdict(absolute_fep_check(l, t, opt), Outcome::pass, "absolute FEP on wk3-isp",
              {"check", "absolute-fep", "--logic", "PWK", "--testbed", "wk3-isp"});
}

void pwk_no_pedcf(Run& run, Workspace& ws, const CheckOptions& opt) {
  FiniteAlgebra wk3 = ws.algebra("WK3");
  LogicSpec l = ws.logic("PWK", wk3.signature());
  FactorOptions fo;
  fo.absolute = true;
  fo.max_arity = 2;
  const Verdict& v =
      run.verdict(factor_determined_check(l, single(wk3), fo, opt), Outcome::fail,
                  "factor-determined compact filters on WK3 x WK3",
                  {"check", "fdc", "--logic", "PWK", "--generators", "WK3", "--arity", "2"});
  if (v.witness) {
    const auto& w = *v.witness;
    run.expect(w.tuple == std::vector<std::string>{"<½,0>"}, "generator <½,0>",
               w.tuple.empty() ? "none" : w.tuple.front());
    run.expect(w.element == std::optional<std::string>("<1,0>"),
               "witness <1,0> lies in Fg(½) x Fg(0) but not in Fg(<½,0>)",
               w.element.value_or("none"));
  }

  std::vector<FiniteAlgebra> factors{wk3, wk3};
  Product p = direct_product(factors, opt.budget);
  const Element half = *wk3.element_named("½");
  const Element one = *wk3.element_named("1");
  const Element zero = *wk3.element_named("0");
  std::vector<Element> h(p.algebra.size());
  for (Element e = 0; e < p.algebra.size(); ++e) {
    Element a = p.project(e, 0);
    Element b = p.project(e, 1);
    if (a == half || b == half) {
      h[e] = half;
    } else {
      h[e] = b == one ? one : zero;
    }
  }
  auto homs = enumerate_homomorphisms(p.algebra, wk3, opt.budget);
  bool found = std::find(homs.begin(), homs.end(), h) != homs.end();
  std::ostringstream table;
  for (Element e = 0; e < p.algebra.size(); ++e) {
    table << (e ? " " : "") << p.algebra.label(e) << "->" << wk3.label(h[e]);
  }
  run.expect(found, "h is among the " + std::to_string(homs.size()) +
                        " homomorphisms WK3 x WK3 -> WK3");
  run.note("h: " + table.str());
  FilterSystem fs(p.algebra, l, opt.budget);
  Subset f = preimage(h, Subset::of(wk3.size(), std::vector<Element>{one, half}));
  const Element gen = *p.algebra.element_named("<½,0>");
  const Element wit = *p.algebra.element_named("<1,0>");
  run.expect(fs.is_filter(f) && f.contains(gen) && !f.contains(wit),
             "F = h^-1[{1,½}] = " + p.algebra.format(f) + " is a filter with <½,0> in F, <1,0> not");
}

void box5_no_min(Run& run, Workspace& ws, const CheckOptions& opt) {
  FiniteAlgebra a = ws.algebra("box5");
  ClassSpec k = ws.class_spec("alpha12", a.signature());
  LogicSpec l = ws.logic("ONE", a.signature());
  RelcongOptions ro;
  ro.tuple = std::vector<Element>{*a.element_named("a1"), *a.element_named("a2")};
  ro.element = *a.element_named("b");
  const Verdict& v = run.verdict(
      smallest_relcong_check(l, a, k, ro, opt), Outcome::fail,
      "smallest K-congruence for a = (a1,a2), b on box5",
      {"check", "minrelcong", "--algebra", "box5", "--class", "alpha12", "--logic", "ONE",
       "--gen", "a1,a2", "--element", "b"});
  if (!v.witness) return;
  std::size_t minimal = 0;
  std::string meet;
  for (const auto& d : v.witness->details) {
    if (d.starts_with("minimal: ")) {
      ++minimal;
      run.note(d);
    }
    if (d.starts_with("meet: ")) meet = d.substr(6);
  }
  run.expect(minimal >= 2, "at least two incomparable minimal K-congruences",
             std::to_string(minimal));
  run.expect(meet.starts_with("{0,1}{a1}{a2}{b}"),
             "their intersection collapses only {0,1}", meet);
}

void m3_not_brouwerian(Run& run, Workspace& ws, const CheckOptions& opt) {
  for (const auto& [name, expected] :
       {std::pair{std::string("M3"), Outcome::fail}, std::pair{std::string("B4"), Outcome::pass}}) {
    FiniteAlgebra a = ws.algebra(name);
    LogicSpec l = ws.logic("ORDER", a.signature());
    run.verdict(dually_brouwerian_check(l, a, opt), expected, "dually Brouwerian on " + name,
                {"check", "brouwerian", "--algebra", name, "--logic", "ORDER"});
  }
}

void modal_local_only(Run& run, Workspace& ws, const CheckOptions& opt) {
  edcf_example(run, ws, opt, "KG", "kg-local", "modal-chains", Variant::local, Outcome::pass);
  for (int k = 0; k <= 3; ++k) {
    FiniteAlgebra a = ws.algebra("ch" + std::to_string(k + 2));
    LogicSpec l = ws.logic("KG", a.signature());
    std::string cand = "kg-global-k" + std::to_string(k);
    EDCFCandidate c = ws.candidate(cand, a.signature());
    run.verdict(check_edcf(l, single(a), c, Variant::global, opt), Outcome::fail,
                cand + " global on " + a.name(),
                {"check", "edcf", "--logic", "KG", "--candidate", cand, "--algebra", a.name(),
                 "--variant", "global"});
  }
}

void luk_local_only(Run& run, Workspace& ws, const CheckOptions& opt) {
  edcf_example(run, ws, opt, "LUK", "luk-and-local", "luk-chains", Variant::local, Outcome::pass);
  edcf_example(run, ws, opt, "LUK", "luk-fusion-local", "luk-chains", Variant::local,
               Outcome::pass);
  Testbed t = ws.testbed("luk-chains");
  const Signature& sig = t.algebras.front().signature();
  run.verdict(compare_candidates(ws.candidate("luk-and-local", sig),
                                 ws.candidate("luk-fusion-local", sig), t, opt),
              Outcome::pass, "luk-and-local and luk-fusion-local are equivalent",
              {"check", "compare", "--candidate", "luk-and-local", "--candidate",
               "luk-fusion-local", "--testbed", "luk-chains"});
  for (int k = 0; k <= 3; ++k) {
    FiniteAlgebra a = ws.algebra("L" + std::to_string(k + 2));
    LogicSpec l = ws.logic("LUK", a.signature());
    std::string cand = "luk-global-k" + std::to_string(k);
    EDCFCandidate c = ws.candidate(cand, a.signature());
    run.verdict(check_edcf(l, single(a), c, Variant::global, opt), Outcome::fail,
                cand + " global on " + a.name(),
                {"check", "edcf", "--logic", "LUK", "--candidate", cand, "--algebra", a.name(),
                 "--variant", "global"});
  }
}

void kl_only_filter(Run& run, Workspace& ws, const CheckOptions& opt) {
  FiniteAlgebra k3 = ws.algebra("K3");
  LogicSpec l = ws.logic("KL", k3.signature());
  FilterSystem fs(k3, l, opt.budget);
  std::vector<Subset> got;
  std::string listing;
  for (const auto& f : fs.all_filters()) {
    got.push_back(f.members());
    listing += (listing.empty() ? "" : ", ") + k3.format(f.members());
  }
  std::vector<Subset> want{Subset::of(k3.size(), std::vector<Element>{*k3.element_named("1")}),
                           Subset::full(k3.size())};
  run.expect(got == want, "KL-filters on K3: {" + listing + "}", "");
}

using Body = void (*)(Run&, Workspace&, const CheckOptions&);

struct Entry {
  const char* id;
  const char* title;
  Body body;
};

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries{
      {"kleene-edcf", "Kleene logic has a global EDCF on ISP(K3)", kleene_edcf},
      {"lp-edcf", "LP has a global EDCF on ISP(K3)", lp_edcf},
      {"pwk-local-edcf", "PWK has a local EDCF and the absolute FEP on ISP(WK3)", pwk_local_edcf},
      {"pwk-no-pedcf", "PWK compact filters are not factor-determined", pwk_no_pedcf},
      {"box5-no-min", "no smallest relative congruence on the 5-element box algebra",
       box5_no_min},
      {"m3-not-brouwerian", "filters of M3 are not dually Brouwerian, those of B4 are",
       m3_not_brouwerian},
      {"modal-local-only", "global modal logic: local EDCF only", modal_local_only},
      {"luk-local-only", "Lukasiewicz logic: local EDCF only", luk_local_only},
      {"kl-only-filter", "the only proper KL-filter on K3 is {1}", kl_only_filter},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& reproduce_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : catalog()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

ReproduceResult reproduce(const std::string& id, Workspace& ws, const CheckOptions& opt) {
  for (const auto& e : catalog()) {
    if (id != e.id) continue;
    ReproduceResult r;
    r.id = e.id;
    r.title = e.title;
    Run run(r);
    auto start = std::chrono::steady_clock::now();
    e.body(run, ws, opt);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw UnknownExample("unknown example: " + id);
}

}  // namespace aal
