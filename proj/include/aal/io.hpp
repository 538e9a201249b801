#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aal/checks.hpp"
#include "aal/classes.hpp"
#include "aal/logic.hpp"

namespace aal {

using json = nlohmann::ordered_json;

FiniteAlgebra algebra_from_json(const json& j);
json to_json(const FiniteAlgebra& a);

using AlgebraResolver = std::function<FiniteAlgebra(const std::string&)>;

// Rules are parsed against `sig`, so bare constant names resolve.
LogicSpec logic_from_json(const json& j, std::string name, const Signature& sig,
                          const AlgebraResolver& resolve);
ClassSpec class_from_json(const json& j, std::string name, const Signature& sig,
                          const AlgebraResolver& resolve);
EDCFCandidate candidate_from_json(const json& j, std::string name, const Signature& sig);

json to_json(const Witness& w);
json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);
std::string to_text(const Verdict& v);

// Blocks of element indices, ordered by least member.
json to_json(const Congruence& c);

// Comma-separated element names (labels, indices or #index); "carrier" is the
// whole carrier and the empty string no elements. Commas inside <...> belong
// to product labels.
std::vector<Element> parse_elements(const FiniteAlgebra& a, const std::string& text);

std::filesystem::path default_data_dir();

// Named algebras, logics, classes, candidates and testbeds, looked up as
// <data>/<kind>s/<name>.json, or read from a path when the name contains a
// slash or ends in .json.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path data_dir = default_data_dir(), Budget budget = {});

  const Budget& budget() const { return budget_; }
  const std::filesystem::path& data_dir() const { return dir_; }

  FiniteAlgebra algebra(const std::string& name);
  LogicSpec logic(const std::string& name, const Signature& sig);
  ClassSpec class_spec(const std::string& name, const Signature& sig);
  EDCFCandidate candidate(const std::string& name, const Signature& sig);
  Testbed testbed(const std::string& name);

  // Names available for one kind ("algebra", "logic", ...), sorted.
  std::vector<std::string> names(const std::string& kind) const;

 private:
  const json& load(const std::string& kind, const std::string& name);

  std::filesystem::path dir_;
  Budget budget_;
  std::map<std::pair<std::string, std::string>, json> cache_;
  std::map<std::string, FiniteAlgebra> algebras_;
};

}  // namespace aal
