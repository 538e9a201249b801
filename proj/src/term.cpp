#include "aal/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "aal/errors.hpp"

namespace aal {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw InvalidAlgebra("empty symbol name");
    if (!seen.insert(s.name).second) {
      throw InvalidAlgebra("duplicate symbol in signature: " + s.name);
    }
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

Term Term::variable(std::string name) {
  Term t;
  t.is_var_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.is_var_ = false;
  t.name_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (is_var_) {
    if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
    return;
  }
  for (const auto& a : args_) a.collect_variables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collect_variables(out);
  return out;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

std::string Term::to_string() const {
  if (is_var_ || args_.empty()) return name_;
  std::string s = "(" + name_;
  for (const auto& a : args_) s += " " + a.to_string();
  return s + ")";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig) : text_(text), sig_(sig) {}

  Term parse() {
    Term t = parse_one();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Term parse_one() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') {
      std::string name = ident();
      if (sig_ != nullptr) {
        if (auto idx = sig_->index_of(name)) {
          if ((*sig_)[*idx].arity != 0) {
            throw ArityMismatch("symbol " + name + " has arity " +
                                std::to_string((*sig_)[*idx].arity) +
                                " but is used as a constant");
          }
          return Term::apply(name);
        }
      }
      return Term::variable(name);
    }
    ++pos_;
    std::string head = ident();
    std::vector<Term> args;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(parse_one());
    }
    if (sig_ != nullptr) {
      auto idx = sig_->index_of(head);
      if (!idx) throw ArityMismatch("unknown symbol: " + head);
      if ((*sig_)[*idx].arity != args.size()) {
        throw ArityMismatch("symbol " + head + " expects " +
                            std::to_string((*sig_)[*idx].arity) + " arguments, got " +
                            std::to_string(args.size()));
      }
    }
    return Term::apply(head, std::move(args));
  }

  std::string_view text_;
  const Signature* sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(text, &sig).parse();
}

Term parse_term_unchecked(std::string_view text) { return Parser(text, nullptr).parse(); }

void check_well_formed(const Term& t, const Signature& sig) {
  if (t.is_variable()) {
    if (auto idx = sig.index_of(t.name()); idx && sig[*idx].arity == 0) {
      throw ArityMismatch("constant " + t.name() + " used as a variable");
    }
    return;
  }
  auto idx = sig.index_of(t.name());
  if (!idx) throw ArityMismatch("unknown symbol: " + t.name());
  if (sig[*idx].arity != t.args().size()) {
    throw ArityMismatch("symbol " + t.name() + " expects " +
                        std::to_string(sig[*idx].arity) + " arguments, got " +
                        std::to_string(t.args().size()));
  }
  for (const auto& a : t.args()) check_well_formed(a, sig);
}

Term substitute(const Term& t, const std::map<std::string, Term>& subst) {
  if (t.is_variable()) {
    auto it = subst.find(t.name());
    return it == subst.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, subst));
  return Term::apply(t.name(), std::move(args));
}

std::vector<std::string> Equation::variables() const {
  std::vector<std::string> out;
  lhs.collect_variables(out);
  rhs.collect_variables(out);
  return out;
}

std::string Equation::to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }

std::vector<std::string> Rule::variables() const {
  std::vector<std::string> out;
  for (const auto& p : premises) p.collect_variables(out);
  conclusion.collect_variables(out);
  return out;
}

std::string Rule::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i) s += ", ";
    s += premises[i].to_string();
  }
  return s + (s.empty() ? "|- " : " |- ") + conclusion.to_string();
}

}  // namespace aal
