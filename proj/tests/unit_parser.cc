#include <doctest.h>

#include <random>

#include "random_formula.hh"
#include "revbisim/corpus.hh"
#include "revbisim/parser.hh"

using namespace revbisim;

TEST_CASE("term parsing") {
  auto a0 = ProcessTerm::prefix(Action("a"), ProcessTerm::nil());
  CHECK(parse_term("a.0 + a.0") == ProcessTerm::choice(a0, a0));
  CHECK(parse_term("a!.b.0") ==
        ProcessTerm::exec_prefix(
            Action("a"), ProcessTerm::prefix(Action("b"), ProcessTerm::nil())));
  CHECK(parse_term(" ( a . 0 ) ") == a0);
  // '+' nests to the left, parentheses keep right nesting
  auto abc = parse_term("a.0 + b.0 + c.0");
  CHECK(abc.left().kind() == ProcessTerm::Kind::Choice);
  auto right = parse_term("a.0 + (b.0 + c.0)");
  CHECK(right.right().kind() == ProcessTerm::Kind::Choice);
  CHECK(render_term(right) == "a.0 + (b.0 + c.0)");
}

TEST_CASE("term parse errors") {
  try {
    parse_term("a.(b.0");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.expected() == "')'");
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("a.0 +"), ParseError);
  CHECK_THROWS_AS(parse_term("A.0"), ParseError);
  CHECK_THROWS_AS(parse_term("a.0 b"), ParseError);
}

TEST_CASE("term rendering") {
  CHECK(render_term(ProcessTerm::nil()) == "0");
  CHECK(render_term(parse_term("a!.b.0")) == "a!.b.0");
  CHECK(render_term(ProcessTerm::choice(
            ProcessTerm::prefix(Action("a"), ProcessTerm::nil()),
            ProcessTerm::nil())) == "a.0 + 0");
  CHECK(render_term(parse_term("a.(b.0 + c.0)")) == "a.(b.0 + c.0)");
  CHECK(render_term(parse_term("a!.0"), {.dagger = true}) != "a!.0");
}

TEST_CASE("formula parsing") {
  CHECK(parse_formula("<a>tt") == Formula::diamond(Action("a"), Formula::truth()));
  CHECK(parse_formula("<a!><c>tt") ==
        Formula::back_diamond(Action("a"),
                              Formula::diamond(Action("c"), Formula::truth())));
  CHECK(parse_formula("~(init & <<tau>>tt)") ==
        Formula::negation(Formula::conjunction(
            Formula::init(), Formula::weak_tau_diamond(Formula::truth()))));
  CHECK(parse_formula("<tau>tt").connective() == Connective::Diamond);
  CHECK(parse_formula("<<tau!>>tt").connective() ==
        Connective::WeakBackTauDiamond);
  CHECK(parse_formula("<<b!>>tt").connective() == Connective::WeakBackDiamond);
  CHECK(parse_formula("until(tt, a, init)").connective() == Connective::Until);
  auto f = parse_formula("tt & init & tt");
  CHECK(f.left().connective() == Connective::And);
  CHECK(parse_formula("<a>tt & init").connective() == Connective::And);
  CHECK_THROWS_AS(parse_formula("<a>"), ParseError);
  CHECK_THROWS_AS(parse_formula("tt &"), ParseError);
  CHECK_THROWS_AS(Formula::weak_diamond(Action::tau(), Formula::truth()),
                  std::invalid_argument);
}

TEST_CASE("term round trip on a corpus") {
  auto corpus = corpus_generate({{Action("a"), Action("b"), Action::tau()}, 3, true});
  for (const auto& p : corpus) {
    auto text = render_term(p);
    CHECK(parse_term(text) == p);
    CHECK(render_term(parse_term(text)) == text);
  }
}

TEST_CASE("formula round trip, random") {
  std::mt19937 rng(7);
  std::vector<Action> acts{Action("a"), Action("b"), Action::tau()};
  for (auto name : {FragmentName::FB, FragmentName::FBps, FragmentName::RB,
                    FragmentName::FRB, FragmentName::WeakFB,
                    FragmentName::WeakFBps, FragmentName::WeakRB,
                    FragmentName::WeakFRB, FragmentName::WeakFRBps}) {
    auto spec = fragment(name);
    for (int i = 0; i < 200; ++i) {
      auto f = testing::random_formula(rng, spec, acts, 6);
      REQUIRE(in_fragment(f, spec));
      CHECK(parse_formula(render_formula(f)) == f);
    }
  }
}
