#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aal {

struct Symbol {
  std::string name;
  unsigned arity = 0;

  bool operator==(const Symbol&) const = default;
};

// Finite list of operation symbols with fixed arities; constants have arity 0.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool has(std::string_view name) const { return index_of(name).has_value(); }

  bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

// Syntax tree over a signature: either a variable or an application.
// Constants are applications with no arguments.
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const { return is_var_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  // Variables in order of first occurrence (left to right).
  std::vector<std::string> variables() const;
  void collect_variables(std::vector<std::string>& out) const;
  std::size_t depth() const;

  // S-expression rendering: constants and variables bare, "(f a b)" otherwise.
  std::string to_string() const;

  bool operator==(const Term&) const = default;

 private:
  bool is_var_ = true;
  std::string name_;
  std::vector<Term> args_;
};

// Parses an S-expression such as "(or x1 (neg x1))". A bare identifier is a
// constant when the signature declares it with arity 0, otherwise a variable.
// Throws ParseError on malformed input and ArityMismatch on wrong arity.
Term parse_term(std::string_view text, const Signature& sig);

// Same grammar without a signature: bare identifiers become variables and no
// arity checking happens. Used for templates before macro expansion.
Term parse_term_unchecked(std::string_view text);

// Throws ArityMismatch if `t` uses an unknown symbol or a wrong arity.
void check_well_formed(const Term& t, const Signature& sig);

Term substitute(const Term& t, const std::map<std::string, Term>& subst);

struct Equation {
  Term lhs;
  Term rhs;

  std::vector<std::string> variables() const;
  std::string to_string() const;
  bool operator==(const Equation&) const = default;
};

// Premises and a conclusion; premises may be empty (an axiom).
struct Rule {
  std::vector<Term> premises;
  Term conclusion;

  std::vector<std::string> variables() const;
  std::string to_string() const;
};

}  // namespace aal
