#pragma once

#include <string>
#include <vector>

#include "aal/checks.hpp"
#include "aal/io.hpp"

namespace aal {

struct ReproduceResult {
  std::string id;
  std::string title;
  bool ok = true;                   // every expectation met
  std::vector<std::string> lines;   // report, one expectation per line
  std::vector<Verdict> verdicts;
  double seconds = 0;
};

const std::vector<std::string>& reproduce_ids();

// Runs one curated example and compares it with the expected outcome.
// Throws UnknownExample.
ReproduceResult reproduce(const std::string& id, Workspace& ws, const CheckOptions& opt = {});

}  // namespace aal
