#pragma once

#include <optional>
#include <span>
#include <vector>

#include "aal/algebra.hpp"
#include "aal/errors.hpp"
#include "aal/partition.hpp"

namespace aal {

// Direct product with its element <-> tuple codec. The first coordinate is
// the least significant digit: element index = t0 + n0*(t1 + n1*(t2 + ...)).
struct Product {
  FiniteAlgebra algebra;
  std::vector<std::size_t> factor_sizes;

  std::vector<Element> decode(Element e) const;
  Element encode(std::span<const Element> tuple) const;
  Element project(Element e, std::size_t factor) const;
};

// Empty list gives the one-element algebra over `sig`. Throws
// SizeBudgetExceeded when the product tables would exceed the budget.
Product direct_product(std::span<const FiniteAlgebra> factors, const Signature& sig,
                       const Budget& budget = {});
Product direct_product(std::span<const FiniteAlgebra> factors, const Budget& budget = {});
FiniteAlgebra power(const FiniteAlgebra& a, std::size_t exponent, const Budget& budget = {});

// One-element algebra over a signature.
FiniteAlgebra trivial_algebra(const Signature& sig, std::string name = "1");

// Least subset containing X and all constants, closed under every table.
Subset subuniverse_generated(const FiniteAlgebra& a, const Subset& x);

// All subuniverses (containing the constants), ascending by cardinality then
// lexicographically. The empty set appears when the signature has no
// constants.
std::vector<Subset> enumerate_subalgebras(const FiniteAlgebra& a, const Budget& budget = {});

struct Subalgebra {
  FiniteAlgebra algebra;
  std::vector<Element> embedding;  // new index -> index in the parent
};

// Restriction to a nonempty subuniverse; elements keep their relative order.
Subalgebra subalgebra(const FiniteAlgebra& a, const Subset& universe, std::string name = "");

struct Quotient {
  FiniteAlgebra algebra;
  std::vector<Element> projection;  // element -> block id
};

// Throws NotACongruence if the tables are not well defined on blocks.
Quotient quotient(const FiniteAlgebra& a, const Congruence& theta);

bool is_homomorphism(std::span<const Element> f, const FiniteAlgebra& a,
                     const FiniteAlgebra& b);

// All homomorphisms A -> B in lexicographic order of (f(0), f(1), ...).
// Counts search nodes against the budget.
std::vector<std::vector<Element>> enumerate_homomorphisms(const FiniteAlgebra& a,
                                                          const FiniteAlgebra& b,
                                                          const Budget& budget = {});

// First homomorphism extending the partial assignment `fixed` (nullopt =
// free), in the same order.
std::optional<std::vector<Element>> find_homomorphism(
    const FiniteAlgebra& a, const FiniteAlgebra& b,
    const std::vector<std::optional<Element>>& fixed, const Budget& budget = {});

// Image of a subset under a map, and preimage.
Subset image(std::span<const Element> f, const Subset& s, std::size_t codomain_size);
Subset preimage(std::span<const Element> f, const Subset& s);

// Same signature and carrier size, and tables equal after relabelling by
// some bijection. Brute force; small algebras only.
bool isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b, const Budget& budget = {});

// Copy of `a` with carrier relabelled by the permutation `perm` (old -> new).
FiniteAlgebra relabel(const FiniteAlgebra& a, std::span<const Element> perm);

}  // namespace aal
