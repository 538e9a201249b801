#include "aal/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#ifndef AAL_DATA_DIR
#define AAL_DATA_DIR "data"
#endif

namespace aal {

namespace {

std::string plural(const std::string& kind) { return kind == "class" ? "classes" : kind + "s"; }

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(where + ": missing \"" + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad \"" + key + "\": " + e.what());
  }
}

Equation equation_from_json(const json& j, const Signature& sig) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("equation must be [lhs, rhs]");
  return {parse_term(j[0].get<std::string>(), sig), parse_term(j[1].get<std::string>(), sig)};
}

Subset designated_from_json(const json& j, const FiniteAlgebra& a) {
  Subset d(a.size());
  for (const auto& e : j) {
    std::optional<Element> x;
    if (e.is_number_unsigned()) {
      if (e.get<Element>() < a.size()) x = e.get<Element>();
    } else if (e.is_string()) {
      x = a.element_named(e.get<std::string>());
    }
    if (!x) throw ConfigError("designated element " + e.dump() + " not in " + a.name());
    d.insert(*x);
  }
  return d;
}

CandidateTemplate template_from_json(const json& j, Variant variant) {
  CandidateTemplate t;
  if (!j.is_object()) return t;
  t.leq = j.value("leq", std::string("meet"));
  if (j.contains("units")) {
    for (const auto& [k, v] : j["units"].items()) t.units[k] = v.get<std::string>();
  }
  if (j.contains("abbrev")) {
    for (const auto& [k, v] : j["abbrev"].items()) {
      t.abbreviations[k] = {field<std::vector<std::string>>(v, "params", "abbreviation " + k),
                            field<std::string>(v, "body", "abbreviation " + k)};
    }
  }
  auto eq_text = [](const json& e) {
    if (e.is_string()) return e.get<std::string>();
    if (e.is_array() && e.size() == 2) {
      return e[0].get<std::string>() + " = " + e[1].get<std::string>();
    }
    throw ConfigError("template equation must be a string or [lhs, rhs]");
  };
  if (j.contains("sets")) {
    for (const auto& s : j["sets"]) {
      CandidateTemplate::Schema schema;
      for (const auto& e : field<json>(s, "equations", "template set")) {
        schema.equations.push_back(eq_text(e));
      }
      schema.over_subsets = s.value("over", std::string()) == "subsets";
      if (s.contains("index")) {
        const auto& idx = s["index"];
        if (!idx.is_object() || idx.size() != 1) {
          throw ConfigError("template index must name exactly one variable");
        }
        schema.index_name = idx.begin().key();
        schema.index_values = idx.begin().value().get<std::vector<long>>();
      }
      t.sets.push_back(std::move(schema));
    }
  } else if (j.contains("fold")) {
    // Short form: a fold of x1..xn below y, one set per nonempty subset when
    // the variant is local.
    const std::string op = j["fold"].get<std::string>();
    CandidateTemplate::Schema schema;
    schema.equations.push_back("(leq (fold " + op + " _) y)");
    schema.over_subsets = variant == Variant::local || variant == Variant::parametrized_local;
    t.sets.push_back(std::move(schema));
  }
  return t;
}

}  // namespace

FiniteAlgebra algebra_from_json(const json& j) {
  const std::string name = field<std::string>(j, "name", "algebra");
  const std::string where = "algebra " + name;
  const auto size = field<std::size_t>(j, "size", where);
  std::vector<Symbol> syms;
  for (const auto& s : field<json>(j, "signature", where)) {
    syms.push_back({field<std::string>(s, "name", where), field<unsigned>(s, "arity", where)});
  }
  const json ops = field<json>(j, "operations", where);
  std::vector<OperationTable> tables;
  for (const auto& s : syms) {
    if (!ops.contains(s.name)) throw InvalidAlgebra(where + ": no table for " + s.name);
    tables.emplace_back(s.arity, size, ops[s.name].get<std::vector<Element>>());
  }
  std::vector<std::string> labels;
  if (j.contains("element_labels")) labels = j["element_labels"].get<std::vector<std::string>>();
  return FiniteAlgebra(name, Signature(std::move(syms)), size, std::move(tables),
                       std::move(labels));
}

json to_json(const FiniteAlgebra& a) {
  json j;
  j["name"] = a.name();
  j["size"] = a.size();
  if (a.has_labels()) j["element_labels"] = a.labels();
  json sig = json::array();
  json ops = json::object();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const auto& sym = a.signature()[s];
    sig.push_back({{"name", sym.name}, {"arity", sym.arity}});
    ops[sym.name] = a.table(s).values();
  }
  j["signature"] = sig;
  j["operations"] = ops;
  return j;
}

LogicSpec logic_from_json(const json& j, std::string name, const Signature& sig,
                          const AlgebraResolver& resolve) {
  const std::string where = "logic " + name;
  const auto kind = field<std::string>(j, "kind", where);
  LogicSpec l;
  l.name = std::move(name);
  if (kind == "rules") {
    RulePresented rp;
    for (const auto& r : field<json>(j, "rules", where)) {
      Rule rule;
      for (const auto& p : r.value("premises", json::array())) {
        rule.premises.push_back(parse_term(p.get<std::string>(), sig));
      }
      rule.conclusion = parse_term(field<std::string>(r, "conclusion", where), sig);
      rp.rules.push_back(std::move(rule));
    }
    l.body = std::move(rp);
  } else if (kind == "matrices") {
    MatrixDetermined md;
    for (const auto& m : field<json>(j, "matrices", where)) {
      FiniteAlgebra alg = resolve(field<std::string>(m, "algebra", where));
      Subset d = designated_from_json(field<json>(m, "designated", where), alg);
      md.matrices.push_back({std::move(alg), std::move(d)});
    }
    if (j.contains("variable_bound")) md.variable_bound = j["variable_bound"].get<std::size_t>();
    l.body = std::move(md);
  } else {
    throw ConfigError(where + ": kind must be rules or matrices");
  }
  return l;
}

ClassSpec class_from_json(const json& j, std::string name, const Signature& sig,
                          const AlgebraResolver& resolve) {
  const std::string where = "class " + name;
  const auto kind = field<std::string>(j, "kind", where);
  ClassSpec k;
  k.name = std::move(name);
  if (kind == "axioms") {
    AxiomaticClass ax;
    for (const auto& e : j.value("equations", json::array())) {
      ax.equations.push_back(equation_from_json(e, sig));
    }
    for (const auto& q : j.value("quasi", json::array())) {
      QuasiEquation qe;
      for (const auto& e : q.value("if", json::array())) {
        qe.antecedents.push_back(equation_from_json(e, sig));
      }
      qe.consequent = equation_from_json(field<json>(q, "then", where), sig);
      ax.quasi.push_back(std::move(qe));
    }
    k.body = std::move(ax);
  } else if (kind == "generators") {
    GeneratedQuasivariety g;
    for (const auto& n : field<std::vector<std::string>>(j, "algebras", where)) {
      g.generators.push_back(resolve(n));
    }
    k.body = std::move(g);
  } else {
    throw ConfigError(where + ": kind must be axioms or generators");
  }
  return k;
}

EDCFCandidate candidate_from_json(const json& j, std::string name, const Signature& sig) {
  const std::string where = "candidate " + name;
  EDCFCandidate c;
  c.name = std::move(name);
  c.variant = variant_from_string(field<std::string>(j, "variant", where));
  c.n_max = j.value("n_max", std::size_t{3});
  c.params = j.value("params", std::size_t{0});
  CandidateTemplate t = template_from_json(j.value("template", json::object()), c.variant);
  if (j.contains("families")) {
    for (const auto& [key, sets] : j["families"].items()) {
      std::size_t n = 0;
      try {
        n = std::stoul(key);
      } catch (const std::exception&) {
        throw ConfigError(where + ": family key " + key + " is not a number");
      }
      std::vector<EquationSet> psi;
      for (const auto& s : sets) {
        EquationSet set;
        for (const auto& e : s) {
          std::string text = e.is_string() ? e.get<std::string>()
                                           : e.at(0).get<std::string>() + " = " +
                                                 e.at(1).get<std::string>();
          set.push_back(expand_equation(text, t, n, {}, sig));
        }
        psi.push_back(std::move(set));
      }
      c.families[n] = std::move(psi);
    }
  }
  materialize(c, t, sig);
  validate_candidate(c);
  return c;
}

json to_json(const Witness& w) {
  json j;
  j["algebra"] = w.algebra;
  j["tuple"] = w.tuple;
  j["element"] = w.element ? json(*w.element) : json(nullptr);
  j["params"] = w.params;
  j["equations"] = w.equations;
  j["side"] = w.side;
  j["details"] = w.details;
  return j;
}

json to_json(const Verdict& v) {
  json j;
  j["check"] = v.check;
  j["outcome"] = to_string(v.outcome);
  j["summary"] = v.summary;
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  j["notes"] = v.notes;
  j["replay"] = v.replay;
  return j;
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.check = field<std::string>(j, "check", "verdict");
  v.outcome = outcome_from_string(field<std::string>(j, "outcome", "verdict"));
  v.summary = j.value("summary", std::string());
  if (j.contains("witness") && !j["witness"].is_null()) {
    const auto& w = j["witness"];
    Witness x;
    x.algebra = w.value("algebra", std::string());
    x.tuple = w.value("tuple", std::vector<std::string>());
    if (w.contains("element") && !w["element"].is_null()) x.element = w["element"].get<std::string>();
    x.params = w.value("params", std::vector<std::string>());
    x.equations = w.value("equations", std::string());
    x.side = w.value("side", std::string());
    x.details = w.value("details", std::vector<std::string>());
    v.witness = std::move(x);
  }
  v.notes = j.value("notes", std::vector<std::string>());
  v.replay = j.value("replay", std::vector<std::string>());
  return v;
}

std::string to_text(const Verdict& v) {
  std::ostringstream out;
  std::string upper = to_string(v.outcome);
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  out << upper << "  " << v.check << ": " << v.summary << "\n";
  if (v.witness) {
    const auto& w = *v.witness;
    out << "  algebra:  " << w.algebra << "\n";
    if (!w.tuple.empty() || w.element) {
      out << "  a:        (";
      for (std::size_t i = 0; i < w.tuple.size(); ++i) out << (i ? "," : "") << w.tuple[i];
      out << ")\n";
    }
    if (w.element) out << "  b:        " << *w.element << "\n";
    if (!w.params.empty()) {
      out << "  z:        (";
      for (std::size_t i = 0; i < w.params.size(); ++i) out << (i ? "," : "") << w.params[i];
      out << ")\n";
    }
    if (!w.equations.empty()) out << "  set:      " << w.equations << "\n";
    if (!w.side.empty()) out << "  reason:   " << w.side << "\n";
    for (const auto& d : w.details) out << "  " << d << "\n";
  }
  for (const auto& n : v.notes) out << "  note: " << n << "\n";
  if (!v.replay.empty()) {
    out << "  replay:  ";
    for (const auto& a : v.replay) {
      bool quote = a.empty() || a.find_first_of(" ,<>{}") != std::string::npos;
      out << " " << (quote ? "'" + a + "'" : a);
    }
    out << "\n";
  }
  return out.str();
}

json to_json(const Congruence& c) {
  json blocks = json::array();
  for (const auto& b : c.blocks()) {
    json block = json::array();
    for (Element e : b) block.push_back(e);
    blocks.push_back(block);
  }
  return blocks;
}

std::vector<Element> parse_elements(const FiniteAlgebra& a, const std::string& text) {
  std::vector<Element> out;
  if (text == "carrier") {
    for (Element e = 0; e < a.size(); ++e) out.push_back(e);
    return out;
  }
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '<') ++depth;
    if (ch == '>') --depth;
    if (ch == ',' && depth == 0) {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || !tokens.empty()) tokens.push_back(cur);
  for (auto tok : tokens) {
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (tok.empty()) continue;
    auto e = a.element_named(tok);
    if (!e) throw UnknownName("no element " + tok + " in " + a.name());
    out.push_back(*e);
  }
  return out;
}

std::filesystem::path default_data_dir() { return AAL_DATA_DIR; }

Workspace::Workspace(std::filesystem::path data_dir, Budget budget)
    : dir_(std::move(data_dir)), budget_(budget) {
  if (budget_.max_steps == 0) throw ConfigError("budget must be positive");
}

const json& Workspace::load(const std::string& kind, const std::string& name) {
  auto key = std::make_pair(kind, name);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::filesystem::path p;
  if (name.find('/') != std::string::npos || name.ends_with(".json")) {
    p = name;
  } else {
    p = dir_ / plural(kind) / (name + ".json");
  }
  std::ifstream in(p);
  if (!in) throw UnknownName("unknown " + kind + ": " + name);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(p.string() + ": " + e.what());
  }
  return cache_.emplace(key, std::move(j)).first->second;
}

FiniteAlgebra Workspace::algebra(const std::string& name) {
  if (auto it = algebras_.find(name); it != algebras_.end()) return it->second;
  FiniteAlgebra a = algebra_from_json(load("algebra", name));
  algebras_.emplace(name, a);
  return a;
}

LogicSpec Workspace::logic(const std::string& name, const Signature& sig) {
  std::string base = std::filesystem::path(name).stem().string();
  return logic_from_json(load("logic", name), base, sig,
                         [this](const std::string& n) { return algebra(n); });
}

ClassSpec Workspace::class_spec(const std::string& name, const Signature& sig) {
  std::string base = std::filesystem::path(name).stem().string();
  return class_from_json(load("class", name), base, sig,
                         [this](const std::string& n) { return algebra(n); });
}

EDCFCandidate Workspace::candidate(const std::string& name, const Signature& sig) {
  std::string base = std::filesystem::path(name).stem().string();
  return candidate_from_json(load("candidate", name), base, sig);
}

Testbed Workspace::testbed(const std::string& name) {
  const json& j = load("testbed", name);
  Testbed t;
  if (j.contains("generators")) {
    std::vector<FiniteAlgebra> gens;
    for (const auto& g : j["generators"].get<std::vector<std::string>>()) {
      gens.push_back(algebra(g));
    }
    t = generate_testbed(gens, j.value("arity", std::size_t{1}), j.value("subalgebras", false),
                         budget_);
  } else if (j.contains("algebras")) {
    for (const auto& a : j["algebras"].get<std::vector<std::string>>()) {
      t.algebras.push_back(algebra(a));
      t.provenance.push_back("generator");
    }
  } else {
    throw ConfigError("testbed " + name + ": needs generators or algebras");
  }
  t.name = std::filesystem::path(name).stem().string();
  if (j.contains("class") && !t.algebras.empty()) {
    t.class_spec = class_spec(j["class"].get<std::string>(), t.algebras.front().signature());
  }
  return t;
}

std::vector<std::string> Workspace::names(const std::string& kind) const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir_ / plural(kind), ec)) {
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aal
