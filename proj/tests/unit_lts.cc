#include <doctest.h>

#include <algorithm>
#include <functional>

#include "revbisim/corpus.hh"
#include "revbisim/lts.hh"
#include "revbisim/parser.hh"

using namespace revbisim;

namespace {
ProcessTerm T(const char* s) { return parse_term(s); }
}

TEST_CASE("step") {
  auto s = step(T("a.0 + a.0"));
  REQUIRE(s.size() == 2);
  CHECK(s[0].first == Action("a"));
  CHECK(s[1].first == Action("a"));
  std::set<ProcessTerm> targets{s[0].second, s[1].second};
  CHECK(targets == std::set<ProcessTerm>{T("a!.0 + a.0"), T("a.0 + a!.0")});

  auto t = step(T("a!.b.0"));
  REQUIRE(t.size() == 1);
  CHECK(t[0].first == Action("b"));
  CHECK(t[0].second == T("a!.b!.0"));

  CHECK(step(T("0")).empty());
  CHECK(step(T("a!.0 + b.0")).empty());
  CHECK_THROWS_AS(step(T("b.a!.0")), UnreachableTermError);
}

TEST_CASE("backstep") {
  auto b = backstep(T("a!.0"));
  REQUIRE(b);
  CHECK(b->first == Action("a"));
  CHECK(b->second == T("a.0"));
  CHECK_FALSE(backstep(T("a.0")));
  auto c = backstep(T("a!.b!.0"));
  REQUIRE(c);
  CHECK(c->first == Action("b"));
  CHECK(c->second == T("a!.b.0"));
  CHECK_THROWS_AS(backstep(T("a!.0 + b!.0")), UnreachableTermError);
}

TEST_CASE("build_lts shapes") {
  auto l = build_lts(T("a.0 + a.0"));
  CHECK(l.size() == 3);
  CHECK(l.transitions().size() == 2);
  for (const auto& t : l.transitions()) {
    CHECK(t.action == Action("a"));
  }
  auto m = build_lts(T("a.0"));
  CHECK(m.size() == 2);
  CHECK(m.transitions().size() == 1);

  auto n = build_lts(T("a!.0 + c.0"));
  CHECK(n.root() == T("a.0 + c.0"));
  CHECK(n.size() == 3);
  CHECK(n.transitions().size() == 2);
  CHECK(n.index_of(T("a!.0 + c.0")).has_value());
  CHECK(n.height() == 1);
  CHECK(build_lts(T("a.b.0 + c.0")).height() == 2);
}

TEST_CASE("loop property and tree shape on a corpus") {
  auto corpus = corpus_generate({{Action("a"), Action("b"), Action::tau()}, 3});
  for (const auto& p : corpus) {
    auto l = build_lts(p);
    CHECK(l.size() == l.transitions().size() + 1);
    std::map<ProcessTerm, int> incoming;
    for (const auto& t : l.transitions()) {
      ++incoming[t.target];
      CHECK(is_reachable(t.target));
      auto back = backstep(t.target);
      REQUIRE(back);
      CHECK(back->first == t.action);
      CHECK(back->second == t.source);
    }
    for (const auto& [s, n] : incoming) {
      CHECK(n == 1);
    }
    CHECK_FALSE(incoming.contains(l.root()));
  }
}

TEST_CASE("weak saturation soundness") {
  auto corpus = corpus_generate({{Action("a"), Action::tau()}, 3});
  for (const auto& p : corpus) {
    auto l = build_lts(p);
    auto sat = weak_saturate(l);
    // strong paths by search
    std::function<void(std::size_t, int, std::set<std::pair<std::string, std::size_t>>&, std::string)>
        walk = [&](std::size_t s, int seen, auto& out, std::string label) {
          out.insert({label.empty() ? "tau" : label, s});
          for (const auto& e : l.successors(s)) {
            if (e.action.is_tau()) {
              walk(e.state, seen, out, label);
            } else if (label.empty()) {
              walk(e.state, seen, out, e.action.name());
            }
          }
        };
    for (std::size_t s = 0; s < l.size(); ++s) {
      std::set<std::pair<std::string, std::size_t>> expected, got;
      walk(s, 0, expected, "");
      for (const auto& e : sat.weak_forward[s]) {
        got.insert({e.label.name(), e.state});
      }
      CHECK(got == expected);
      for (const auto& e : sat.weak_forward[s]) {
        auto back = sat.weak_backward[e.state];
        CHECK(std::any_of(back.begin(), back.end(), [&](const auto& b) {
          return b.state == s && b.label == e.label;
        }));
      }
    }
  }
}

TEST_CASE("dot export") {
  auto l = build_lts(T("a.0"));
  auto dot = export_dot(l);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '\n') > 2);
  CHECK(dot.find("label=\"a\"") != std::string::npos);
  auto two = export_dot(build_lts(T("a.0 + a.0")));
  std::size_t edges = 0;
  for (std::size_t i = two.find("->"); i != std::string::npos; i = two.find("->", i + 1)) {
    ++edges;
  }
  CHECK(edges == 2);
  CHECK(export_dot(l, T("a!.0")).find("filled") != std::string::npos);
  CHECK_THROWS_AS(export_dot(l, T("b.0")), std::invalid_argument);
}

TEST_CASE("state space") {
  std::vector<ProcessTerm> terms{T("a!.0"), T("a.0"), T("tau.a.0")};
  auto s = StateSpace::of_terms(terms);
  CHECK(s.system_count() == 2);
  CHECK(s.size() == 5);
  auto x = s.id(T("tau.a.0"));
  CHECK(s.is_initial(x));
  auto a = s.find_action(Action("a"));
  REQUIRE(a);
  CHECK(StateSpace::with_action(s.weak_out(x), *a).size() == 1);
  CHECK(StateSpace::with_action(s.weak_out(x), s.tau()).size() == 2);
  CHECK(s.out(x).size() == 1);
}
