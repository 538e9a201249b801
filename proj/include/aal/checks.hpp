#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aal/algebra.hpp"
#include "aal/classes.hpp"
#include "aal/logic.hpp"

namespace aal {

enum class Variant { global, local, parametrized, parametrized_local };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);  // throws ConfigError

using EquationSet = std::vector<Equation>;

// Families Psi_n of equation sets over x1..xn, y and parameters z1..zk.
struct EDCFCandidate {
  std::string name;
  Variant variant = Variant::global;
  std::size_t n_max = 3;
  std::size_t params = 0;
  std::map<std::size_t, std::vector<EquationSet>> families;

  // Throws ConfigError when Psi_n was not materialized.
  const std::vector<EquationSet>& family(std::size_t n) const;
};

// Macro layer used by candidate files. Terms may use
//   (fold OP PAT)         OP(...OP(PAT[x1], PAT[x2])..., PAT[xn]), PAT's
//                         placeholder is `_`; the unit of OP when n = 0
//   (iter K STEP X)       w_0 = X, w_{i+1} = STEP(X, w_i); result w_K
//   (iter K STEP B X)     the same with w_0 = B
//   abbreviations         (name a b) with a user-supplied body
// and an equation may be written as "(leq a b)", expanding to the meet form
// (and a b) = a or the join form (or a b) = b.
struct CandidateTemplate {
  struct Abbreviation {
    std::vector<std::string> params;
    std::string body;
  };
  struct Schema {
    std::vector<std::string> equations;  // "lhs = rhs" or "(leq a b)"
    bool over_subsets = false;           // one set per nonempty subset of x1..xn
    std::string index_name;              // e.g. "k"
    std::vector<long> index_values;
  };
  std::string leq = "meet";
  std::map<std::string, Abbreviation> abbreviations;
  std::map<std::string, std::string> units;
  std::vector<Schema> sets;
};

// Expands one term or equation for arity n (variables x1..xn). Result is
// checked against `sig`.
Term expand_term(const std::string& text, const CandidateTemplate& t, std::size_t n,
                 const std::map<std::string, long>& index, const Signature& sig);
Equation expand_equation(const std::string& text, const CandidateTemplate& t, std::size_t n,
                         const std::map<std::string, long>& index, const Signature& sig);

// Psi_n for every n <= c.n_max not already present in c.families.
void materialize(EDCFCandidate& c, const CandidateTemplate& t, const Signature& sig);

// Throws ConfigError if a set uses variables outside x1..xn, y, z1..zk.
void validate_candidate(const EDCFCandidate& c);

struct Testbed {
  std::string name;
  std::vector<FiniteAlgebra> algebras;
  std::vector<std::string> provenance;  // generator | product | subalgebra
  std::optional<ClassSpec> class_spec;
};

// Generators, products of up to `max_product_arity` of them (with repetition),
// and optionally every subalgebra of those; isomorphic copies dropped.
Testbed generate_testbed(const std::vector<FiniteAlgebra>& generators,
                         std::size_t max_product_arity, bool include_subalgebras,
                         const Budget& budget = {});

enum class Outcome { pass, fail, inconclusive };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);
int exit_code(Outcome o);  // 0, 1, 4

struct Witness {
  std::string algebra;
  std::vector<std::string> tuple;   // a1..an (labels)
  std::optional<std::string> element;  // b
  std::vector<std::string> params;  // z1..zk
  std::string equations;            // the equation set involved, if any
  std::string side;                 // which way the comparison failed
  std::vector<std::string> details;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  std::string check;
  Outcome outcome = Outcome::pass;
  std::string summary;
  std::optional<Witness> witness;
  std::vector<std::string> notes;
  // CLI arguments reproducing this verdict (filled in by the front end).
  std::vector<std::string> replay;

  bool operator==(const Verdict&) const = default;
};

struct CheckOptions {
  std::size_t arity_cap = 3;   // longest generator tuple swept
  Budget budget;
};

// b in Fg(a1..an) <=> some Theta in Psi_n holds of (a, b, c) for some c.
Verdict check_edcf(const LogicSpec& l, const Testbed& t, const EDCFCandidate& c, Variant variant,
                   const CheckOptions& opt = {});

// As check_edcf, but "holds" means every equation pair lies in theta_K(A).
Verdict check_edcf_theta_form(const LogicSpec& l, const std::vector<FiniteAlgebra>& as,
                              const ClassSpec& k, const EDCFCandidate& c, Variant variant,
                              const CheckOptions& opt = {});

// Each set of one candidate is implied on the testbed by some set of the
// other with the same n, and vice versa.
Verdict compare_candidates(const EDCFCandidate& c1, const EDCFCandidate& c2, const Testbed& t,
                           const CheckOptions& opt = {});

// Fg^A(X) = A n Fg^B(X) for every subalgebra A of every B in the testbed
// and every X of at most arity_cap elements of A.
Verdict absolute_fep_check(const LogicSpec& l, const Testbed& t, const CheckOptions& opt = {});

// For every filter G on B, subalgebra A and filter F' on A containing A n G:
// F' = A n Fg^B(G u F').
Verdict fep_check(const LogicSpec& l, const Testbed& t, const CheckOptions& opt = {});

struct FactorOptions {
  bool absolute = true;
  std::size_t max_arity = 2;  // product arity, at most 3
  // Sweep only these generator sets of the first product (element indices).
  std::optional<std::vector<Element>> pinned;
};

// Fg on products of testbed members against the product of factorwise Fg.
// Relative form seeds each factor with a filter F_i.
Verdict factor_determined_check(const LogicSpec& l, const Testbed& t, const FactorOptions& fo,
                                const CheckOptions& opt = {});

struct TestAlgebraCandidate {
  FiniteAlgebra algebra;
  std::vector<Element> p;
  Element q = 0;
};

Verdict test_algebra_check(const LogicSpec& l, const Testbed& t, const TestAlgebraCandidate& c,
                           const CheckOptions& opt = {});

// Tries every (B in t, p in B^n, q in Fg(p)) as an n-test algebra; passes with
// the first that works.
Verdict test_algebra_search(const LogicSpec& l, const Testbed& t, std::size_t n,
                            const CheckOptions& opt = {});

struct RelcongOptions {
  std::optional<std::vector<Element>> tuple;  // pin a1..an
  std::optional<Element> element;             // pin b
};

// S = {theta K-congruence : b in Fg^{A,theta}(a)} is empty or has a least
// member.
Verdict smallest_relcong_check(const LogicSpec& l, const FiniteAlgebra& a, const ClassSpec& k,
                               const RelcongOptions& ro = {}, const CheckOptions& opt = {});

// For all filters F, G the filters H with G <= F v H have a least member.
Verdict dually_brouwerian_check(const LogicSpec& l, const FiniteAlgebra& a,
                                const CheckOptions& opt = {});

enum class LeibnizMode { monotone, injective };

Verdict leibniz_probe(const LogicSpec& l, const Testbed& t, LeibnizMode mode,
                      const CheckOptions& opt = {});

// Runs `check` on each stage in order and returns the first failure, noting
// the stage; inconclusive if there are no stages or none fails.
Verdict search_counterexample(const std::vector<Testbed>& stages,
                              const std::function<Verdict(const Testbed&)>& check);

// Stages for growing product arity 1..max_arity over `generators`.
std::vector<Testbed> product_stages(const std::vector<FiniteAlgebra>& generators,
                                    std::size_t max_arity, bool include_subalgebras,
                                    const Budget& budget = {});

// Stages {a1}, {a1, a2}, ... over a fixture list.
std::vector<Testbed> prefix_stages(const std::vector<FiniteAlgebra>& fixtures);

}  // namespace aal
