#include <doctest.h>

#include "revbisim/corpus.hh"
#include "revbisim/parser.hh"
#include "revbisim/term.hh"

using namespace revbisim;

namespace {
ProcessTerm T(const char* s) { return parse_term(s); }
}

TEST_CASE("initial") {
  CHECK(is_initial(T("0")));
  CHECK(is_initial(T("a.b.0 + c.0")));
  CHECK_FALSE(is_initial(T("a!.b.0")));
}

TEST_CASE("final") {
  CHECK(is_final(T("0")));
  CHECK(is_final(T("a!.0")));
  CHECK_FALSE(is_final(T("a!.b.0")));
  CHECK(is_final(T("a!.0 + b.0")));
  CHECK_FALSE(is_final(T("a.0 + b.0")));
}

TEST_CASE("reachable") {
  CHECK(is_reachable(T("a!.b.0")));
  CHECK_FALSE(is_reachable(T("b.a!.0")));
  CHECK_FALSE(is_reachable(T("a!.0 + b!.0")));
  CHECK(unreachable_subterm(T("b.a!.0")).has_value());
  CHECK_FALSE(unreachable_subterm(T("a!.0 + b.0")).has_value());
  CHECK_THROWS_AS(require_reachable(T("b.a!.0")), UnreachableTermError);
}

TEST_CASE("origin") {
  CHECK(origin(T("a!.b.0")) == T("a.b.0"));
  CHECK(origin(T("a.0")) == T("a.0"));
  CHECK(origin(T("a!.0 + c.0")) == T("a.0 + c.0"));
}

TEST_CASE("alphabet") {
  CHECK(alphabet(T("0")).empty());
  CHECK(alphabet(T("a!.b.0 + c.0")) ==
        std::set<Action>{Action("a"), Action("b"), Action("c")});
  CHECK(alphabet(T("tau.a.0")) == std::set<Action>{Action("a"), Action::tau()});
}

TEST_CASE("action names") {
  CHECK(Action::is_valid_name("a1_x"));
  CHECK_FALSE(Action::is_valid_name("A"));
  CHECK_FALSE(Action::is_valid_name("1a"));
  CHECK_THROWS_AS(Action("B"), std::invalid_argument);
  CHECK(Action::tau().is_tau());
}

TEST_CASE("term order") {
  CHECK(T("0") < T("a.0"));
  CHECK(T("b.0") < T("a!.0"));
  CHECK(T("a!.0") < T("a.0 + a.0"));
  CHECK(T("a.0") < T("b.0"));
}

TEST_CASE("predicates over a decorated corpus") {
  auto corpus = corpus_generate({{Action("a"), Action("b"), Action::tau()}, 3, true});
  for (const auto& p : corpus) {
    CHECK(is_reachable(p));
    CHECK((is_initial(p) && is_final(p)) == p.is_nil());
    CHECK(origin(origin(p)) == origin(p));
    CHECK(is_initial(origin(p)));
  }
}
