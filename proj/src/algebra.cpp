#include "aal/algebra.hpp"

#include <algorithm>
#include <charconv>

#include "aal/errors.hpp"

namespace aal {

OperationTable::OperationTable(unsigned arity, std::size_t size, std::vector<Element> values)
    : arity_(arity), size_(size), values_(std::move(values)) {}

FiniteAlgebra::FiniteAlgebra(std::string name, Signature sig, std::size_t size,
                             std::vector<OperationTable> tables,
                             std::vector<std::string> labels)
    : name_(std::move(name)),
      sig_(std::move(sig)),
      size_(size),
      tables_(std::move(tables)),
      labels_(std::move(labels)) {
  if (size_ == 0) throw InvalidAlgebra(name_ + ": carrier must be nonempty");
  if (tables_.size() != sig_.size()) {
    throw InvalidAlgebra(name_ + ": expected " + std::to_string(sig_.size()) +
                         " tables, got " + std::to_string(tables_.size()));
  }
  if (!labels_.empty() && labels_.size() != size_) {
    throw InvalidAlgebra(name_ + ": label count differs from size");
  }
  for (std::size_t s = 0; s < sig_.size(); ++s) {
    const auto& tab = tables_[s];
    if (tab.arity() != sig_[s].arity) {
      throw InvalidAlgebra(name_ + ": table arity mismatch for " + sig_[s].name);
    }
    if (tab.values().size() != checked_pow(size_, sig_[s].arity)) {
      throw InvalidAlgebra(name_ + ": table for " + sig_[s].name + " has " +
                           std::to_string(tab.values().size()) + " entries");
    }
    for (Element v : tab.values()) {
      if (v >= size_) {
        throw InvalidAlgebra(name_ + ": table for " + sig_[s].name +
                             " has out-of-range entry " + std::to_string(v));
      }
    }
  }
}

const OperationTable& FiniteAlgebra::table(std::string_view symbol) const {
  auto idx = sig_.index_of(symbol);
  if (!idx) throw ArityMismatch("unknown symbol: " + std::string(symbol));
  return tables_[*idx];
}

std::string FiniteAlgebra::label(Element e) const {
  if (e < labels_.size()) return labels_[e];
  return std::to_string(e);
}

std::string FiniteAlgebra::format(const Subset& s) const {
  std::string out = "{";
  bool first = true;
  for (Element e : s.elements()) {
    if (!first) out += ",";
    first = false;
    out += label(e);
  }
  return out + "}";
}

std::optional<Element> FiniteAlgebra::element_named(std::string_view text) const {
  for (Element e = 0; e < labels_.size(); ++e) {
    if (labels_[e] == text) return e;
  }
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '#') digits.remove_prefix(1);
  Element idx = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
  if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty() &&
      idx < size_) {
    return idx;
  }
  return std::nullopt;
}

std::vector<Element> FiniteAlgebra::constants() const {
  std::vector<Element> out;
  for (std::size_t s = 0; s < sig_.size(); ++s) {
    if (sig_[s].arity == 0) out.push_back(tables_[s].values()[0]);
  }
  return out;
}

Element eval_term(const Term& t, const FiniteAlgebra& a, const Valuation& v) {
  if (t.is_variable()) {
    auto it = v.find(t.name());
    if (it == v.end()) throw UnboundVariable(t.name());
    if (it->second >= a.size()) {
      throw Error("valuation of " + t.name() + " outside the carrier of " + a.name());
    }
    return it->second;
  }
  auto idx = a.signature().index_of(t.name());
  if (!idx) throw ArityMismatch("unknown symbol: " + t.name());
  if (a.signature()[*idx].arity != t.args().size()) {
    throw ArityMismatch("symbol " + t.name() + " expects " +
                        std::to_string(a.signature()[*idx].arity) + " arguments");
  }
  std::vector<Element> args;
  args.reserve(t.args().size());
  for (const auto& sub : t.args()) args.push_back(eval_term(sub, a, v));
  return a.apply(*idx, args);
}

CompiledTerm::CompiledTerm(const Term& t, const FiniteAlgebra& a,
                           const std::vector<std::string>& slots)
    : algebra_(&a) {
  // Post-order emission.
  auto emit = [&](auto&& self, const Term& u) -> void {
    if (u.is_variable()) {
      auto it = std::find(slots.begin(), slots.end(), u.name());
      if (it == slots.end()) throw UnboundVariable(u.name());
      code_.push_back({true, static_cast<std::uint32_t>(it - slots.begin()), 0});
      return;
    }
    auto idx = a.signature().index_of(u.name());
    if (!idx) throw ArityMismatch("unknown symbol: " + u.name());
    if (a.signature()[*idx].arity != u.args().size()) {
      throw ArityMismatch("symbol " + u.name() + " expects " +
                          std::to_string(a.signature()[*idx].arity) + " arguments");
    }
    for (const auto& sub : u.args()) self(self, sub);
    code_.push_back({false, static_cast<std::uint32_t>(*idx),
                     static_cast<std::uint32_t>(u.args().size())});
  };
  emit(emit, t);
}

Element CompiledTerm::eval(std::span<const Element> slot_values) const {
  Element stack[64] = {};
  std::vector<Element> heap;
  Element* st = stack;
  if (code_.size() > 64) {
    heap.resize(code_.size());
    st = heap.data();
  }
  std::size_t sp = 0;
  for (const auto& ins : code_) {
    if (ins.is_var) {
      st[sp++] = slot_values[ins.index];
    } else {
      sp -= ins.arity;
      st[sp] = algebra_->apply(ins.index, std::span<const Element>(st + sp, ins.arity));
      ++sp;
    }
  }
  return st[0];
}

bool holds_equation(const Equation& eq, const FiniteAlgebra& a, const Valuation& v) {
  return eval_term(eq.lhs, a, v) == eval_term(eq.rhs, a, v);
}

bool holds_universally(const Equation& eq, const FiniteAlgebra& a) {
  auto vars = eq.variables();
  CompiledTerm lhs(eq.lhs, a, vars);
  CompiledTerm rhs(eq.rhs, a, vars);
  return for_each_tuple(a.size(), vars.size(), [&](std::span<const Element> t) {
    return lhs.eval(t) == rhs.eval(t);
  });
}

}  // namespace aal
