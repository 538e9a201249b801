#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "aal/algebra.hpp"
#include "aal/errors.hpp"
#include "aal/partition.hpp"

namespace aal {

struct Matrix {
  FiniteAlgebra algebra;
  Subset designated;
};

struct RulePresented {
  std::vector<Rule> rules;
};

// The logic of a finite set of finite matrices. `variable_bound` caps the
// number of variables used when testing filters; below |A| the test can only
// refute.
struct MatrixDetermined {
  std::vector<Matrix> matrices;
  std::optional<std::size_t> variable_bound;
};

struct LogicSpec {
  std::string name;
  std::variant<RulePresented, MatrixDetermined> body;

  bool rule_presented() const { return std::holds_alternative<RulePresented>(body); }
};

// h(premises) in D for every premise implies h(conclusion) in D, for every
// valuation h into the matrix.
bool rule_valid_in_matrix(const Rule& r, const Matrix& m);

// Subset of A known to be an L-filter. Only FilterSystem creates these.
class Filter {
 public:
  const Subset& members() const { return members_; }
  bool contains(Element e) const { return members_.contains(e); }
  bool operator==(const Filter& o) const = default;
  auto operator<=>(const Filter& o) const { return members_ <=> o.members_; }

 private:
  friend class FilterSystem;
  explicit Filter(Subset s) : members_(std::move(s)) {}
  Subset members_;
};

// The L-filters of one finite algebra, organised around a one-step
// consequence operator C: a set is a filter iff C(F) = F, and Fg(X) is the
// limit of X, C(X), C(C(X)), ...
//
// Rule-presented: C(Y) adds the conclusion of every rule instance whose
// premises lie in Y.
//
// Matrix-determined, exact: the filters are the intersections of sets
// h^-1[E], where (T, E) runs over the reductions of the submatrices of the
// given matrices and h over the homomorphisms A -> T. C(Y) is then the
// least such intersection containing Y, so one step reaches Fg(Y).
//
// Matrix-determined through the term clone (forced, or under a variable
// bound): with the variables x_0..x_{k-1} read as the elements 0..k-1 of A
// (k = |A| unless bounded), C(Y) adds the value of every term that is
// entailed by the matrices from the terms whose values lie in Y.
// Entailment only needs the valuations v into a matrix algebra B that send
// every such term into D; v qualifies iff the subalgebra of A x B generated
// by the pairs (i, v_i) avoids Y x (B \ D). Valuations whose generated
// relation is a function constrain elements one at a time; the rest are
// combined into a subalgebra of A x B^m generated by the columns.
//
// Results are cached, so one instance must not be shared across threads.
enum class MatrixMethod { automatic, semantic, clone };

class FilterSystem {
 public:
  // `automatic` uses the semantic method unless a variable bound below |A|
  // is set.
  FilterSystem(FiniteAlgebra a, LogicSpec l, Budget budget = {},
               MatrixMethod method = MatrixMethod::automatic);

  const FiniteAlgebra& algebra() const { return a_; }
  const LogicSpec& logic() const { return l_; }
  // False when a variable bound below |A| makes is_filter a refuter only.
  bool exact() const { return exact_; }

  Subset step(const Subset& y) const;
  bool is_filter(const Subset& f) const;
  // Throws NotAFilter.
  Filter checked(const Subset& f) const;

  Filter fg(const Subset& x) const;
  Filter fg(std::span<const Element> gens) const;
  // C_0 = X, C_{i+1} = C(C_i), up to and including the fixpoint.
  std::vector<Subset> fg_trace(const Subset& x) const;

  // Ascending by cardinality, then lexicographically.
  const std::vector<Filter>& all_filters() const;
  Filter join(const Filter& f, const Filter& g) const { return fg(f.members() | g.members()); }

 private:
  struct RuleInstance {
    std::vector<Element> premises;
    Element conclusion;
  };
  struct Coordinate {
    std::size_t matrix;
    std::vector<Element> column;  // v_0..v_{k-1}
    Subset bad;                   // A-values paired with an undesignated value
    bool functional;
  };

  void prepare_rules(const RulePresented& rp);
  void prepare_matrices(const MatrixDetermined& md);
  void prepare_clone(const MatrixDetermined& md);
  void prepare_semantic(const MatrixDetermined& md);
  Subset matrix_consequences(const Subset& y) const;

  FiniteAlgebra a_;
  LogicSpec l_;
  Budget budget_;
  MatrixMethod method_;
  bool exact_ = true;

  std::vector<RuleInstance> instances_;

  std::size_t vars_ = 0;
  Subset generated_;  // subuniverse generated by the variable images
  std::vector<Coordinate> coords_;
  bool semantic_ = false;
  std::vector<Subset> preimages_;  // h^-1[E], deduplicated

  mutable std::unordered_map<Subset, Subset> fg_cache_;
  mutable std::optional<std::vector<Filter>> all_filters_;
};

// Fg^{A,theta}(X): computed on A/theta and pulled back along the projection.
Subset fg_relative(const FiniteAlgebra& a, const Congruence& theta, const Subset& x,
                   const LogicSpec& l, const Budget& budget = {});

}  // namespace aal
