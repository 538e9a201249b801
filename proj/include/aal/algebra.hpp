#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aal/subset.hpp"
#include "aal/term.hpp"

namespace aal {

// Total operation {0..n-1}^arity -> {0..n-1}, row-major with the first
// argument most significant.
class OperationTable {
 public:
  OperationTable() = default;
  OperationTable(unsigned arity, std::size_t size, std::vector<Element> values);

  unsigned arity() const { return arity_; }
  const std::vector<Element>& values() const { return values_; }

  std::size_t index(std::span<const Element> args) const {
    std::size_t idx = 0;
    for (Element a : args) idx = idx * size_ + a;
    return idx;
  }
  Element operator()(std::span<const Element> args) const { return values_[index(args)]; }
  Element unary(Element a) const { return values_[a]; }
  Element binary(Element a, Element b) const { return values_[a * size_ + b]; }

 private:
  unsigned arity_ = 0;
  std::size_t size_ = 0;
  std::vector<Element> values_;
};

// Algebra on the carrier {0, ..., size-1} with one table per signature symbol.
class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  // Validates: one table per symbol, arity^size entries, entries < size.
  FiniteAlgebra(std::string name, Signature sig, std::size_t size,
                std::vector<OperationTable> tables, std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Signature& signature() const { return sig_; }
  std::size_t size() const { return size_; }
  const std::vector<OperationTable>& tables() const { return tables_; }
  const OperationTable& table(std::size_t symbol) const { return tables_[symbol]; }
  const OperationTable& table(std::string_view symbol) const;

  Element apply(std::size_t symbol, std::span<const Element> args) const {
    return tables_[symbol](args);
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Element e) const;
  std::string format(const Subset& s) const;  // "{1,½}"

  // Element named by a label, or by a decimal index, or by "#index".
  std::optional<Element> element_named(std::string_view text) const;

  // Values of all constants of the signature.
  std::vector<Element> constants() const;

 private:
  std::string name_;
  Signature sig_;
  std::size_t size_ = 0;
  std::vector<OperationTable> tables_;
  std::vector<std::string> labels_;
};

using Valuation = std::map<std::string, Element>;

// Throws UnboundVariable / ArityMismatch.
Element eval_term(const Term& t, const FiniteAlgebra& a, const Valuation& v);

// A term flattened to postfix code against a fixed algebra and a fixed
// ordering of variable slots; for the inner loops of exhaustive sweeps.
class CompiledTerm {
 public:
  CompiledTerm() = default;
  CompiledTerm(const Term& t, const FiniteAlgebra& a, const std::vector<std::string>& slots);

  Element eval(std::span<const Element> slot_values) const;

 private:
  struct Instr {
    bool is_var;
    std::uint32_t index;  // slot or symbol
    std::uint32_t arity;
  };
  const FiniteAlgebra* algebra_ = nullptr;
  std::vector<Instr> code_;
};

bool holds_equation(const Equation& eq, const FiniteAlgebra& a, const Valuation& v);
// True iff the equation holds under every assignment of its variables.
bool holds_universally(const Equation& eq, const FiniteAlgebra& a);

// Iterates all |A|^k tuples in lexicographic order; `f` returns false to stop.
// Returns false iff stopped early.
template <typename F>
bool for_each_tuple(std::size_t n, std::size_t k, F&& f) {
  std::vector<Element> t(k, 0);
  if (k > 0 && n == 0) return true;
  for (;;) {
    if (!f(std::span<const Element>(t))) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++t[i] < n) break;
      t[i] = 0;
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

}  // namespace aal
