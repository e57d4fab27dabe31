#pragma once

#include <string>
#include <vector>

#include "revbisim/equiv.hh"

namespace revbisim {

/// One displayed (in)equivalence: `left` and `right` are expected to be
/// related by `kind` iff `expected`. `required_pairs`, when non-empty, must
/// all occur in the witness of an equivalent verdict.
struct GoldenClaim {
  std::string location;
  EquivKind kind;
  std::string left;
  std::string right;
  bool expected;
  std::vector<std::pair<std::string, std::string>> required_pairs;
};

struct GoldenResult {
  GoldenClaim claim;
  bool actual = false;
  bool passed = false;
  std::string note;
};

struct GoldenReport {
  std::vector<GoldenResult> results;
  bool passed() const;
  std::string to_json() const;
};

const std::vector<GoldenClaim>& golden_claims();

GoldenReport run_golden_suite();

}  // namespace revbisim
