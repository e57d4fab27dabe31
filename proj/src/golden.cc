#include "revbisim/golden.hh"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "revbisim/logic.hh"
#include "revbisim/parser.hh"

namespace revbisim {

const std::vector<GoldenClaim>& golden_claims() {
  using K = EquivKind;
  static const std::vector<GoldenClaim> claims{
      {"a.0 + a.0 against a.0, strong", K::FB, "a.0 + a.0", "a.0", true, {}},
      {"a.0 + a.0 against a.0, strong", K::RB, "a.0 + a.0", "a.0", true, {}},
      {"a.0 + a.0 against a.0, strong, with witness pairs", K::FRB, "a.0 + a.0",
       "a.0", true,
       {{"a.0 + a.0", "a.0"}, {"a!.0 + a.0", "a!.0"}, {"a.0 + a!.0", "a!.0"}}},
      {"final processes, no outgoing moves", K::FB, "a!.0", "a!.0 + c.0", true, {}},
      {"final processes, one incoming a", K::RB, "a!.0", "a!.0 + c.0", true, {}},
      {"final processes, c enabled after undoing a", K::FRB, "a!.0",
       "a!.0 + c.0", false, {}},
      {"FB and RB incomparable: executed prefix against nil", K::FB, "a!.0",
       "0", true, {}},
      {"FB and RB incomparable: executed prefix against nil", K::RB, "a!.0",
       "0", false, {}},
      {"FB and RB incomparable: prefix against nil", K::RB, "a.0", "0", true, {}},
      {"FB and RB incomparable: prefix against nil", K::FB, "a.0", "0", false, {}},
      {"FB not compositional for choice", K::FB, "a!.b.0", "b.0", true, {}},
      {"FB not compositional for choice", K::FB, "a!.b.0 + c.0", "b.0 + c.0",
       false, {}},
      {"RB sees the executed a", K::RB, "a!.b.0", "b.0", false, {}},
      {"past-sensitive FB sees the executed a", K::FBps, "a!.b.0", "b.0", false,
       {}},
      {"past-sensitive FB ignores which past", K::FBps, "a1!.b.0", "a2!.b.0",
       true, {}},
      {"past-sensitive FB ignores which past", K::RB, "a1!.b.0", "a2!.b.0",
       false, {}},
      {"FBps and RB incomparable: different initial actions", K::RB, "a1.b.0",
       "a2.b.0", true, {}},
      {"FBps and RB incomparable: different initial actions", K::FBps,
       "a1.b.0", "a2.b.0", false, {}},
      {"weak: leading tau absorbed", K::wFB, "tau.a.0", "a.0", true, {}},
      {"weak: leading tau absorbed", K::wFRB, "tau.a.0", "a.0", true, {}},
      {"weak: leading tau absorbed, except with past sensitivity", K::wFBps,
       "tau.a.0", "a.0", false, {}},
      {"weak: leading tau absorbed, except with past sensitivity", K::wFRBps,
       "tau.a.0", "a.0", false, {}},
      {"weak: tau before a in a choice", K::wFB, "tau.a.0 + b.0", "a.0 + b.0",
       false, {}},
      {"weak: tau before a in a choice", K::wFRB, "tau.a.0 + b.0", "a.0 + b.0",
       false, {}},
      {"weak FRB differs from weak FB on initial processes", K::wFB,
       "tau.a.0 + a.0 + b.0", "tau.a.0 + b.0", true, {}},
      {"weak FRB differs from weak FB on initial processes", K::wFRB,
       "tau.a.0 + a.0 + b.0", "tau.a.0 + b.0", false, {}},
      {"same, right-nested sum", K::wFB, "tau.a.0 + (a.0 + b.0)",
       "tau.a.0 + b.0", true, {}},
      {"same, right-nested sum", K::wFRB, "tau.a.0 + (a.0 + b.0)",
       "tau.a.0 + b.0", false, {}},
      {"same, tau under a c prefix", K::wFB, "c.(tau.a.0 + a.0 + b.0)",
       "c.(tau.a.0 + b.0)", true, {}},
      {"same, tau under a c prefix", K::wFRB, "c.(tau.a.0 + a.0 + b.0)",
       "c.(tau.a.0 + b.0)", false, {}},
      {"weak FRBps differs from weak FBps on initial processes", K::wFBps,
       "tau.a.0 + a.0", "tau.a.0", true, {}},
      {"weak FRBps differs from weak FBps on initial processes", K::wFRBps,
       "tau.a.0 + a.0", "tau.a.0", false, {}},
      {"same, tau under a c prefix", K::wFBps, "c.(tau.a.0 + a.0 + b.0)",
       "c.(tau.a.0 + b.0)", true, {}},
      {"same, tau under a c prefix", K::wFRBps, "c.(tau.a.0 + a.0 + b.0)",
       "c.(tau.a.0 + b.0)", false, {}},
      {"branching and weak FRB part on non-initial processes", K::BB,
       "a1!.b.0", "a2!.b.0", true, {}},
      {"branching and weak FRB part on non-initial processes", K::wFRB,
       "a1!.b.0", "a2!.b.0", false, {}},
  };
  return claims;
}

bool GoldenReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const GoldenResult& r) { return r.passed; });
}

GoldenReport run_golden_suite() {
  GoldenReport report;
  for (const auto& claim : golden_claims()) {
    GoldenResult result;
    result.claim = claim;
    try {
      const ProcessTerm left = parse_term(claim.left);
      const ProcessTerm right = parse_term(claim.right);
      EquivalenceReport r = bisimilar(claim.kind, left, right);
      result.actual = r.equivalent;
      result.passed = r.equivalent == claim.expected;
      for (const auto& [x, y] : claim.required_pairs) {
        std::pair want{parse_term(x), parse_term(y)};
        if (std::find(r.witness.begin(), r.witness.end(), want) ==
            r.witness.end()) {
          result.passed = false;
          result.note = "witness lacks (" + x + ", " + y + ")";
        }
      }
      if (r.distinguishing) {
        const bool l = satisfies(left, *r.distinguishing);
        const bool rr = satisfies(right, *r.distinguishing);
        result.note = render_formula(*r.distinguishing);
        if (l == rr) {
          result.passed = false;
          result.note += " does not split the pair";
        }
      }
    } catch (const std::exception& e) {
      result.passed = false;
      result.note = e.what();
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string GoldenReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["passed"] = passed();
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["location"] = r.claim.location;
    e["kind"] = std::string(to_string(r.claim.kind));
    e["left"] = r.claim.left;
    e["right"] = r.claim.right;
    e["expected"] = r.claim.expected;
    e["actual"] = r.actual;
    e["verdict"] = r.passed ? "pass" : "fail";
    if (!r.note.empty()) {
      e["note"] = r.note;
    }
    list.push_back(std::move(e));
  }
  j["claims"] = std::move(list);
  return j.dump(2);
}

}  // namespace revbisim
