#include <doctest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "revbisim/corpus.hh"
#include "revbisim/equiv.hh"
#include "revbisim/parser.hh"

using namespace revbisim;

namespace {
ProcessTerm T(const char* s) { return parse_term(s); }

bool has(const WitnessRelation& r, const char* x, const char* y) {
  return std::find(r.begin(), r.end(), std::pair{T(x), T(y)}) != r.end();
}

bool eq(EquivKind k, const char* x, const char* y) {
  return bisimilar(k, T(x), T(y)).equivalent;
}
}  // namespace

TEST_CASE("kind names") {
  for (auto k : all_kinds) {
    CHECK(kind_from_string(to_string(k)) == k);
  }
  CHECK_FALSE(kind_from_string("XB"));
  CHECK_FALSE(fragment_of(EquivKind::BB));
  CHECK(fragment_of(EquivKind::wFRBps) == FragmentName::WeakFRBps);
}

TEST_CASE("relation_fixpoint examples") {
  auto r = relation_fixpoint(EquivKind::FRB, build_lts(T("a.0 + a.0")),
                             build_lts(T("a.0")));
  CHECK(has(r, "a.0 + a.0", "a.0"));
  CHECK(has(r, "a!.0 + a.0", "a!.0"));
  CHECK(has(r, "a.0 + a!.0", "a!.0"));
  CHECK(has(r, "a!.0", "a.0 + a!.0"));

  auto fb = relation_fixpoint(EquivKind::FB, build_lts(T("a!.0")), build_lts(T("0")));
  CHECK(has(fb, "a!.0", "0"));
  auto rb = relation_fixpoint(EquivKind::RB, build_lts(T("a!.0")), build_lts(T("0")));
  CHECK_FALSE(has(rb, "a!.0", "0"));
  CHECK(std::is_sorted(rb.begin(), rb.end(), [](const auto& a, const auto& b) {
    return std::pair{render_term(a.first), render_term(a.second)} <
           std::pair{render_term(b.first), render_term(b.second)};
  }));
}

TEST_CASE("bisimilar examples") {
  CHECK_FALSE(eq(EquivKind::FRB, "a!.0 + c.0", "a!.0"));
  CHECK(eq(EquivKind::FB, "a!.0 + c.0", "a!.0"));
  CHECK_FALSE(eq(EquivKind::wFRB, "tau.a.0 + a.0 + b.0", "tau.a.0 + b.0"));
  CHECK(eq(EquivKind::wFB, "tau.a.0 + a.0 + b.0", "tau.a.0 + b.0"));
  CHECK(eq(EquivKind::wFB, "tau.a.0", "a.0"));
  CHECK_FALSE(eq(EquivKind::FB, "tau.a.0", "a.0"));
  CHECK(eq(EquivKind::BB, "a1!.b.0", "a2!.b.0"));
  CHECK_FALSE(eq(EquivKind::wFRB, "a1!.b.0", "a2!.b.0"));
  CHECK_THROWS_AS(bisimilar(EquivKind::FB, T("b.a!.0"), T("0")),
                  UnreachableTermError);
}

TEST_CASE("report json") {
  auto yes = bisimilar(EquivKind::FRB, T("a.0 + a.0"), T("a.0"));
  auto j = nlohmann::json::parse(yes.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["kind"] == "FRB");
  CHECK(j["equivalent"] == true);
  CHECK(j["distinguishing"].is_null());
  CHECK(j["witness"].size() == yes.witness.size());
  CHECK_FALSE(yes.witness.empty());

  auto no = bisimilar(EquivKind::FRB, T("a!.0 + c.0"), T("a!.0"));
  auto k = nlohmann::json::parse(no.to_json());
  CHECK(k["equivalent"] == false);
  CHECK(k["distinguishing"].is_string());
  CHECK(k["witness"].empty());
  // byte stable
  CHECK(no.to_json() == bisimilar(EquivKind::FRB, T("a!.0 + c.0"), T("a!.0")).to_json());
}

TEST_CASE("witness is a bisimulation") {
  for (auto k : all_kinds) {
    auto rep = bisimilar(k, T("tau.a.0 + a.0"), T("tau.a.0 + a.0 + a.0"));
    if (!rep.equivalent) {
      continue;
    }
    StateSpace s;
    s.add(rep.left);
    s.add(rep.right);
    std::vector<std::pair<StateId, StateId>> pairs;
    for (const auto& [x, y] : rep.witness) {
      pairs.push_back({s.id(x), s.id(y)});
    }
    CHECK(is_bisimulation(k, s, pairs));
  }
}

TEST_CASE("refine_partition examples") {
  auto blocks = refine_partition(EquivKind::FB, build_lts(T("a.0 + a.0")),
                                 build_lts(T("a.0")));
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].size() + blocks[1].size() == 5);
  auto same = [&](const std::vector<std::vector<ProcessTerm>>& bs,
                  const char* x, const char* y) {
    for (const auto& b : bs) {
      bool hx = std::find(b.begin(), b.end(), T(x)) != b.end();
      bool hy = std::find(b.begin(), b.end(), T(y)) != b.end();
      if (hx || hy) {
        return hx && hy;
      }
    }
    return false;
  };
  CHECK(same(blocks, "a.0 + a.0", "a.0"));
  CHECK(same(blocks, "a!.0", "a!.0 + a.0"));
  CHECK(same(refine_partition(EquivKind::FBps, build_lts(T("a1!.b.0")),
                              build_lts(T("a2!.b.0"))),
             "a1!.b.0", "a2!.b.0"));
  CHECK(same(refine_partition(EquivKind::RB, build_lts(T("a.0")), build_lts(T("0"))),
             "a.0", "0"));
  CHECK_THROWS_AS(refine_partition(EquivKind::BB, build_lts(T("a.0")),
                                   build_lts(T("0"))),
                  std::invalid_argument);
}

TEST_CASE("greatest relation is an equivalence") {
  auto corpus = corpus_generate({{Action("a"), Action::tau()}, 3, true});
  auto space = StateSpace::of_terms(corpus);
  for (auto k : all_kinds) {
    auto t = greatest_relation(k, space);
    for (StateId x = 0; x < space.size(); ++x) {
      CHECK(t.related(x, x));
      for (StateId y = 0; y < space.size(); ++y) {
        if (t.related(x, y) != t.related(y, x)) {
          FAIL("asymmetric");
        }
      }
    }
  }
}

TEST_CASE("backward traces") {
  CHECK(backward_trace(T("a!.b!.0"), false) ==
        std::vector<Action>{Action("b"), Action("a")});
  CHECK(backward_trace(T("a.0"), false).empty());
  CHECK(backward_trace(T("tau!.a!.0"), true) == std::vector<Action>{Action("a")});
  CHECK(backward_trace(T("tau!.a!.0"), false) ==
        std::vector<Action>{Action("a"), Action::tau()});
}

TEST_CASE("stuttering and cross examples") {
  CHECK(stuttering_violations(build_lts(T("tau.tau.a.0"))).empty());
  CHECK(stuttering_violations(build_lts(T("a.0"))).empty());
  CHECK(stuttering_violations(build_lts(T("c.(tau.a.0 + b.0)"))).empty());
  CHECK(cross_violations(build_lts(T("tau.a.0")), build_lts(T("a.0"))).empty());
  CHECK(cross_violations(build_lts(T("0")), build_lts(T("0"))).empty());
  CHECK(cross_violations(build_lts(T("tau.a.0 + b.0")),
                         build_lts(T("tau.a.0 + b.0"))).empty());
}
