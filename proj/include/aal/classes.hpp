#pragma once

#include <string>
#include <variant>
#include <vector>

#include "aal/algebra.hpp"
#include "aal/congruence.hpp"

namespace aal {

struct QuasiEquation {
  std::vector<Equation> antecedents;
  Equation consequent;
};

struct AxiomaticClass {
  std::vector<Equation> equations;
  std::vector<QuasiEquation> quasi;
};

// The quasivariety ISPP_U of finitely many finite generators.
struct GeneratedQuasivariety {
  std::vector<FiniteAlgebra> generators;
};

struct ClassSpec {
  std::string name;
  std::variant<AxiomaticClass, GeneratedQuasivariety> body;
};

bool holds_universally(const QuasiEquation& q, const FiniteAlgebra& a);

// Axiomatic: every axiom holds universally. Generated: each pair of distinct
// elements is separated by a homomorphism into some generator.
bool member(const FiniteAlgebra& b, const ClassSpec& k, const Budget& budget = {});

// Congruences of A whose quotient lies in K.
struct RelativeCongruenceSet {
  std::vector<Congruence> congruences;  // sorted
  bool closed_under_meet = false;

  bool contains(const Congruence& c) const;
};

RelativeCongruenceSet k_congruences(const FiniteAlgebra& a, const ClassSpec& k,
                                    std::size_t max_size = 12, const Budget& budget = {});

// Least K-congruence. Throws EmptyRelativeCongruenceSet when there is none.
Congruence theta_K(const FiniteAlgebra& a, const ClassSpec& k, const Budget& budget = {});

// Least K-congruence containing `pairs`.
Congruence cg_K(const FiniteAlgebra& a, const ClassSpec& k, std::span<const ElementPair> pairs,
                const Budget& budget = {});

}  // namespace aal
