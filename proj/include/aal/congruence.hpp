#pragma once

#include <utility>
#include <vector>

#include "aal/algebra.hpp"
#include "aal/errors.hpp"
#include "aal/partition.hpp"

namespace aal {

using ElementPair = std::pair<Element, Element>;

struct CongruenceSet {
  std::vector<Congruence> congruences;  // sorted, no duplicates
  bool closed_under_meet = false;

  bool contains(const Congruence& c) const;
};

// Maps x -> f(c1, ..., x, ..., ck) for every symbol f, position and choice
// of constants c_i; duplicates removed. Every congruence is closed under
// these, and a partition closed under them is a congruence.
std::vector<std::vector<Element>> basic_translations(const FiniteAlgebra& a);

bool is_congruence(const FiniteAlgebra& a, const Congruence& theta);

// Least congruence containing `pairs`.
Congruence cg_generated(const FiniteAlgebra& a, std::span<const ElementPair> pairs);
Congruence cg_generated(const FiniteAlgebra& a, const Congruence& seed);

// Every congruence of A: Δ plus the join-closure of principal congruences.
// Refuses algebras larger than `max_size`.
CongruenceSet all_congruences(const FiniteAlgebra& a, std::size_t max_size = 12,
                              const Budget& budget = {});

// True iff F is a union of theta-blocks.
bool is_compatible(const Congruence& theta, const Subset& f);

// Unary maps obtained from the identity by repeatedly plugging into one
// argument of a basic operation with constants elsewhere.
struct UnaryPolynomialClone {
  std::vector<std::vector<Element>> functions;  // sorted
  bool contains(const std::vector<Element>& f) const;
};

UnaryPolynomialClone unary_polynomials(const FiniteAlgebra& a, const Budget& budget = {});

// Largest congruence compatible with F: a ~ b iff p(a) in F <=> p(b) in F for
// every p in the unary polynomial clone.
Congruence leibniz_congruence(const FiniteAlgebra& a, const Subset& f,
                              const Budget& budget = {});
Congruence leibniz_congruence(const UnaryPolynomialClone& clone, const Subset& f);

}  // namespace aal
