// aalcheck: command-line front end over the aal library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "aal/checks.hpp"
#include "aal/congruence.hpp"
#include "aal/construct.hpp"
#include "aal/io.hpp"
#include "aal/reproduce.hpp"

using namespace aal;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct Config {
  std::string command;
  std::string algebra, logic, klass, testbed, generators, gen, element, variant, checker;
  std::string format = "text";
  std::string data_dir;
  std::vector<std::string> candidates;
  std::vector<std::string> targets;  // reproduce ids, list kinds
  std::string file;
  std::size_t arity = 0;
  bool subalgebras = false;
  std::size_t cap = 3;
  std::size_t n = 1;
  std::uint64_t budget = Budget{}.max_steps;
  std::optional<unsigned> seed;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

FiniteAlgebra shuffled(const FiniteAlgebra& a, std::mt19937& rng) {
  std::vector<Element> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(a, perm);
}

class Session {
 public:
  explicit Session(const Config& c)
      : c_(c),
        ws_(c.data_dir.empty() ? default_data_dir() : std::filesystem::path(c.data_dir),
            Budget{c.budget}) {
    if (c.seed) rng_.seed(*c.seed);
    opt_.budget = Budget{c.budget};
    opt_.arity_cap = c.cap;
  }

  FiniteAlgebra algebra(const std::string& name) {
    FiniteAlgebra a = ws_.algebra(name);
    return c_.seed ? shuffled(a, rng_) : a;
  }

  FiniteAlgebra need_algebra() {
    if (c_.algebra.empty()) throw ConfigError("--algebra is required");
    return algebra(c_.algebra);
  }

  // --testbed, or --generators (products up to --arity, with --subalgebras),
  // or a single --algebra. `pool_only` keeps the generators unexpanded.
  Testbed testbed(bool pool_only = false) {
    Testbed t;
    if (!c_.testbed.empty()) {
      t = ws_.testbed(c_.testbed);
    } else if (!c_.generators.empty()) {
      std::vector<FiniteAlgebra> gens;
      for (const auto& g : split(c_.generators)) gens.push_back(ws_.algebra(g));
      if (pool_only) {
        for (auto& g : gens) {
          t.algebras.push_back(std::move(g));
          t.provenance.push_back("generator");
        }
      } else {
        t = generate_testbed(gens, std::max<std::size_t>(c_.arity, 1), c_.subalgebras,
                             opt_.budget);
      }
      t.name = c_.generators;
    } else if (!c_.algebra.empty()) {
      t.algebras.push_back(ws_.algebra(c_.algebra));
      t.provenance.push_back("generator");
      t.name = c_.algebra;
    } else {
      throw ConfigError("one of --testbed, --generators or --algebra is required");
    }
    if (t.algebras.empty()) throw ConfigError("empty testbed");
    if (c_.seed) {
      for (auto& a : t.algebras) a = shuffled(a, rng_);
    }
    return t;
  }

  LogicSpec logic(const Signature& sig) {
    if (c_.logic.empty()) throw ConfigError("--logic is required");
    return ws_.logic(c_.logic, sig);
  }

  ClassSpec klass(const Signature& sig) {
    if (c_.klass.empty()) throw ConfigError("--class is required");
    return ws_.class_spec(c_.klass, sig);
  }

  EDCFCandidate candidate(std::size_t i, const Signature& sig) {
    if (c_.candidates.size() <= i) throw ConfigError("--candidate is required");
    return ws_.candidate(c_.candidates[i], sig);
  }

  Workspace& ws() { return ws_; }
  const CheckOptions& opt() const { return opt_; }

 private:
  const Config& c_;
  Workspace ws_;
  CheckOptions opt_;
  std::mt19937 rng_{0};
};

Verdict run_check(const Config& c, Session& s) {
  const std::string& k = c.checker;
  if (k == "edcf" || k == "edcf-theta") {
    Testbed t = s.testbed();
    const Signature& sig = t.algebras.front().signature();
    LogicSpec l = s.logic(sig);
    EDCFCandidate cand = s.candidate(0, sig);
    Variant v = c.variant.empty() ? cand.variant : variant_from_string(c.variant);
    if (k == "edcf") return check_edcf(l, t, cand, v, s.opt());
    ClassSpec cls = t.class_spec ? *t.class_spec : s.klass(sig);
    return check_edcf_theta_form(l, t.algebras, cls, cand, v, s.opt());
  }
  if (k == "compare") {
    Testbed t = s.testbed();
    const Signature& sig = t.algebras.front().signature();
    return compare_candidates(s.candidate(0, sig), s.candidate(1, sig), t, s.opt());
  }
  if (k == "absolute-fep" || k == "fep" || k == "leibniz-monotone" ||
      k == "leibniz-injective" || k == "test-algebra") {
    Testbed t = s.testbed();
    LogicSpec l = s.logic(t.algebras.front().signature());
    if (k == "absolute-fep") return absolute_fep_check(l, t, s.opt());
    if (k == "fep") return fep_check(l, t, s.opt());
    if (k == "test-algebra") return test_algebra_search(l, t, c.n, s.opt());
    return leibniz_probe(l, t, k == "leibniz-monotone" ? LeibnizMode::monotone
                                                       : LeibnizMode::injective,
                         s.opt());
  }
  if (k == "fdc" || k == "fdc-relative") {
    Testbed t = s.testbed(true);
    LogicSpec l = s.logic(t.algebras.front().signature());
    FactorOptions fo;
    fo.absolute = k == "fdc";
    fo.max_arity = c.arity ? c.arity : 2;
    if (!c.gen.empty()) {
      std::vector<FiniteAlgebra> first(2, t.algebras.front());
      Product p = direct_product(first, s.opt().budget);
      fo.pinned = parse_elements(p.algebra, c.gen);
    }
    return factor_determined_check(l, t, fo, s.opt());
  }
  if (k == "minrelcong") {
    FiniteAlgebra a = s.need_algebra();
    LogicSpec l = s.logic(a.signature());
    ClassSpec cls = s.klass(a.signature());
    RelcongOptions ro;
    if (!c.gen.empty()) ro.tuple = parse_elements(a, c.gen);
    if (!c.element.empty()) {
      auto e = parse_elements(a, c.element);
      if (e.size() != 1) throw ConfigError("--element names exactly one element");
      ro.element = e.front();
    }
    return smallest_relcong_check(l, a, cls, ro, s.opt());
  }
  if (k == "brouwerian") {
    FiniteAlgebra a = s.need_algebra();
    return dually_brouwerian_check(s.logic(a.signature()), a, s.opt());
  }
  throw ConfigError("unknown checker: " + k);
}

// Arguments that reproduce a check, without output options.
std::vector<std::string> replay_args(const Config& c) {
  std::vector<std::string> r{"check", c.checker};
  auto add = [&](const char* flag, const std::string& v) {
    if (!v.empty()) {
      r.push_back(flag);
      r.push_back(v);
    }
  };
  add("--algebra", c.algebra);
  add("--logic", c.logic);
  add("--class", c.klass);
  for (const auto& cand : c.candidates) add("--candidate", cand);
  add("--testbed", c.testbed);
  add("--generators", c.generators);
  if (c.arity) add("--arity", std::to_string(c.arity));
  if (c.subalgebras) r.push_back("--subalgebras");
  if (!c.gen.empty()) add("--gen", c.gen);
  add("--element", c.element);
  add("--variant", c.variant);
  if (c.cap != 3) add("--cap", std::to_string(c.cap));
  if (c.n != 1) add("--n", std::to_string(c.n));
  if (c.budget != Budget{}.max_steps) add("--budget", std::to_string(c.budget));
  if (c.seed) add("--seed", std::to_string(*c.seed));
  return r;
}

void print_verdict(const Config& c, const Verdict& v) {
  if (c.format == "json") {
    std::cout << to_json(v).dump(2) << "\n";
  } else {
    std::cout << to_text(v);
  }
}

int cmd_check(const Config& c) {
  Session s(c);
  Verdict v = run_check(c, s);
  v.replay = replay_args(c);
  print_verdict(c, v);
  return exit_code(v.outcome);
}

int cmd_fg(const Config& c) {
  Session s(c);
  FiniteAlgebra a = s.need_algebra();
  LogicSpec l = s.logic(a.signature());
  FilterSystem fs(a, l, s.opt().budget);
  Subset x = Subset::of(a.size(), parse_elements(a, c.gen));
  auto trace = fs.fg_trace(x);
  if (c.format == "json") {
    json j;
    j["algebra"] = a.name();
    j["logic"] = l.name;
    auto labels = [&](const Subset& s) {
      json out = json::array();
      for (Element e : s.elements()) out.push_back(a.label(e));
      return out;
    };
    j["generators"] = labels(x);
    j["filter"] = labels(trace.back());
    j["exact"] = fs.exact();
    json t = json::array();
    for (const auto& step : trace) t.push_back(labels(step));
    j["trace"] = t;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Fg(" << a.format(x) << ") on " << a.name() << " for " << l.name << " = "
              << a.format(trace.back()) << "\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      std::cout << "  C" << i << " = " << a.format(trace[i]) << "\n";
    }
    if (!fs.exact()) std::cout << "  note: variable bound below |A|, result may be too small\n";
  }
  return 0;
}

int cmd_reproduce(const Config& c) {
  Session s(c);
  std::vector<std::string> ids = c.targets;
  if (ids.empty() || (ids.size() == 1 && ids.front() == "all")) ids = reproduce_ids();
  bool all_ok = true;
  json out = json::array();
  for (const auto& id : ids) {
    ReproduceResult r = reproduce(id, s.ws(), s.opt());
    all_ok &= r.ok;
    if (c.format == "json") {
      json j;
      j["id"] = r.id;
      j["title"] = r.title;
      j["ok"] = r.ok;
      j["seconds"] = r.seconds;
      j["lines"] = r.lines;
      json vs = json::array();
      for (const auto& v : r.verdicts) vs.push_back(to_json(v));
      j["verdicts"] = vs;
      out.push_back(j);
    } else {
      std::cout << r.id << ": " << r.title << "\n";
      for (const auto& line : r.lines) std::cout << line << "\n";
      std::ostringstream secs;
      secs.precision(2);
      secs << std::fixed << r.seconds;
      std::cout << (r.ok ? "  => reproduced" : "  => DIFFERS from expected") << " (" << secs.str()
                << " s)\n\n";
    }
  }
  if (c.format == "json") std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_list(const Config& c) {
  Session s(c);
  std::vector<std::string> kinds = c.targets;
  if (kinds.empty()) kinds = {"algebra", "logic", "class", "candidate", "testbed", "example"};
  json out = json::object();
  for (const auto& kind : kinds) {
    std::vector<std::string> names =
        kind == "example" ? reproduce_ids() : s.ws().names(kind);
    if (kind != "example" && names.empty()) throw ConfigError("unknown kind: " + kind);
    if (c.format == "json") {
      out[kind] = names;
      continue;
    }
    std::cout << (kind == "class" ? "classes" : kind + "s") << ":";
    for (const auto& n : names) std::cout << " " << n;
    std::cout << "\n";
  }
  if (c.format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_congruences(const Config& c) {
  Session s(c);
  FiniteAlgebra a = s.need_algebra();
  auto cs = all_congruences(a, 12, s.opt().budget).congruences;
  if (c.format == "json") {
    json out = json::array();
    for (const auto& th : cs) out.push_back(to_json(th));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << cs.size() << " congruences on " << a.name() << "\n";
    for (const auto& th : cs) {
      std::cout << " ";
      for (const auto& b : th.blocks()) std::cout << " " << a.format(Subset::of(a.size(), b));
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_leibniz(const Config& c) {
  Session s(c);
  FiniteAlgebra a = s.need_algebra();
  auto clone = unary_polynomials(a, s.opt().budget);
  std::vector<Subset> sets;
  if (!c.gen.empty() || c.logic.empty()) {
    sets.push_back(Subset::of(a.size(), parse_elements(a, c.gen)));
  } else {
    FilterSystem fs(a, s.logic(a.signature()), s.opt().budget);
    for (const auto& f : fs.all_filters()) sets.push_back(f.members());
  }
  json out = json::array();
  for (const auto& f : sets) {
    Congruence om = leibniz_congruence(clone, f);
    if (c.format == "json") {
      out.push_back({{"set", a.format(f)}, {"leibniz", to_json(om)}});
      continue;
    }
    std::cout << "Omega " << a.format(f) << " =";
    for (const auto& b : om.blocks()) std::cout << " " << a.format(Subset::of(a.size(), b));
    std::cout << "\n";
  }
  if (c.format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--algebra", c.algebra, "algebra name or JSON file");
  sub->add_option("--logic", c.logic, "logic name or JSON file");
  sub->add_option("--class", c.klass, "class name or JSON file");
  sub->add_option("--candidate", c.candidates, "EDCF candidate (repeat for compare)");
  sub->add_option("--testbed", c.testbed, "testbed name or JSON file");
  sub->add_option("--generators", c.generators, "comma-separated generator algebras");
  sub->add_option("--arity", c.arity, "product arity");
  sub->add_flag("--subalgebras", c.subalgebras, "add subalgebras of generated algebras");
  sub->add_option("--gen", c.gen, "generators: comma-separated elements, \"\" or carrier");
  sub->add_option("--element", c.element, "pin the element b");
  sub->add_option("--variant", c.variant, "global | local | parametrized | parametrized_local");
  sub->add_option("--cap", c.cap, "longest generator tuple swept (default 3)");
  sub->add_option("--n", c.n, "arity for test-algebra search");
  sub->add_option("--budget", c.budget, "step budget")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", c.seed, "relabel algebras by a random permutation; name elements by label");
  sub->add_option("--data", c.data_dir, "data directory");
}

void build(CLI::App& app, Config& c) {
  app.require_subcommand(1);
  auto* fg = app.add_subcommand("fg", "generated filter with closure trace");
  auto* check = app.add_subcommand("check", "run a checker");
  check->add_option("checker", c.checker,
                    "edcf | edcf-theta | compare | absolute-fep | fep | fdc | fdc-relative | "
                    "test-algebra | minrelcong | brouwerian | leibniz-monotone | "
                    "leibniz-injective")
      ->required();
  auto* rep = app.add_subcommand("reproduce", "run curated examples (id... or all)");
  rep->add_option("ids", c.targets, "example ids");
  auto* list = app.add_subcommand("list", "list named data and examples");
  list->add_option("kinds", c.targets, "algebra | logic | class | candidate | testbed | example");
  auto* cong = app.add_subcommand("congruences", "all congruences of an algebra");
  auto* leib = app.add_subcommand("leibniz", "Leibniz congruences of filters or of --gen");
  auto* replay = app.add_subcommand("replay", "re-run a JSON verdict and compare");
  replay->add_option("file", c.file, "verdict JSON")->required();
  for (auto* sub : {fg, check, rep, list, cong, leib, replay}) {
    add_common(sub, c);
    sub->callback([&c, sub] { c.command = sub->get_name(); });
  }
}

int dispatch(const Config& c);

int cmd_replay(const Config& c) {
  std::ifstream in(c.file);
  if (!in) throw UnknownName("cannot read " + c.file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(c.file + ": " + e.what());
  }
  Verdict recorded = verdict_from_json(j);
  if (recorded.replay.empty()) throw ConfigError("verdict has no replay arguments");
  Config rc;
  CLI::App app;
  build(app, rc);
  std::vector<std::string> args(recorded.replay.rbegin(), recorded.replay.rend());
  app.parse(args);
  if (rc.command != "check") throw ConfigError("replay only supports check verdicts");
  if (rc.data_dir.empty()) rc.data_dir = c.data_dir;
  Session s(rc);
  Verdict v = run_check(rc, s);
  v.replay = recorded.replay;
  print_verdict(c, v);
  if (!(v == recorded)) {
    std::cout << "replayed verdict DIFFERS from " << c.file << "\n";
    return 1;
  }
  if (c.format != "json") std::cout << "identical to " << c.file << "\n";
  return exit_code(v.outcome);
}

int dispatch(const Config& c) {
  if (c.command == "fg") return cmd_fg(c);
  if (c.command == "check") return cmd_check(c);
  if (c.command == "reproduce") return cmd_reproduce(c);
  if (c.command == "list") return cmd_list(c);
  if (c.command == "congruences") return cmd_congruences(c);
  if (c.command == "leibniz") return cmd_leibniz(c);
  if (c.command == "replay") return cmd_replay(c);
  throw ConfigError("no command");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Finite checks for filters, congruences and equational definability"};
  build(app, c);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  try {
    return dispatch(c);
  } catch (const SizeBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
