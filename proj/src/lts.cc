#include "revbisim/lts.hh"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "revbisim/parser.hh"

namespace revbisim {

namespace {

using Successors = std::vector<std::pair<Action, ProcessTerm>>;

// Transcription of the four rules. Terms reaching this function are
// reachable, so a Prefix whose continuation is not initial never occurs.
void derive(const ProcessTerm& p, Successors& out) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      return;
    case ProcessTerm::Kind::Prefix:
      // Act_f
      if (is_initial(p.continuation())) {
        out.emplace_back(p.action(), ProcessTerm::exec_prefix(
                                         p.action(), p.continuation()));
      }
      return;
    case ProcessTerm::Kind::ExecPrefix: {
      // Act_p
      Successors inner;
      derive(p.continuation(), inner);
      for (auto& [b, q] : inner) {
        out.emplace_back(b, ProcessTerm::exec_prefix(p.action(), q));
      }
      return;
    }
    case ProcessTerm::Kind::Choice: {
      // Cho_l
      if (is_initial(p.right())) {
        Successors inner;
        derive(p.left(), inner);
        for (auto& [a, q] : inner) {
          out.emplace_back(a, ProcessTerm::choice(q, p.right()));
        }
      }
      // Cho_r
      if (is_initial(p.left())) {
        Successors inner;
        derive(p.right(), inner);
        for (auto& [a, q] : inner) {
          out.emplace_back(a, ProcessTerm::choice(p.left(), q));
        }
      }
      return;
    }
  }
}

Successors sorted_successors(const ProcessTerm& p) {
  Successors out;
  derive(p, out);
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    keys.push_back({{out[i].first.name(), render_term(out[i].second)}, i});
  }
  std::sort(keys.begin(), keys.end());
  Successors sorted;
  sorted.reserve(out.size());
  for (const auto& k : keys) {
    sorted.push_back(out[k.second]);
  }
  return sorted;
}

std::optional<std::pair<Action, ProcessTerm>> undo(const ProcessTerm& p) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
    case ProcessTerm::Kind::Prefix:
      return std::nullopt;
    case ProcessTerm::Kind::ExecPrefix: {
      if (is_initial(p.continuation())) {
        return std::pair{p.action(),
                         ProcessTerm::prefix(p.action(), p.continuation())};
      }
      auto inner = undo(p.continuation());
      if (!inner) {
        return std::nullopt;
      }
      return std::pair{inner->first,
                       ProcessTerm::exec_prefix(p.action(), inner->second)};
    }
    case ProcessTerm::Kind::Choice: {
      if (!is_initial(p.left())) {
        auto inner = undo(p.left());
        if (!inner) {
          return std::nullopt;
        }
        return std::pair{inner->first,
                         ProcessTerm::choice(inner->second, p.right())};
      }
      if (!is_initial(p.right())) {
        auto inner = undo(p.right());
        if (!inner) {
          return std::nullopt;
        }
        return std::pair{inner->first,
                         ProcessTerm::choice(p.left(), inner->second)};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<Action, ProcessTerm>> step(const ProcessTerm& p) {
  require_reachable(p);
  return sorted_successors(p);
}

std::optional<std::pair<Action, ProcessTerm>> backstep(const ProcessTerm& p) {
  require_reachable(p);
  return undo(p);
}

std::optional<std::size_t> Lts::index_of(const ProcessTerm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

Lts build_lts(const ProcessTerm& p) {
  require_reachable(p);
  Lts l;
  ProcessTerm root = origin(p);
  l.states_.push_back(root);
  l.index_.emplace(root, 0);
  l.out_.emplace_back();
  l.in_.emplace_back();
  std::vector<std::size_t> level{0};

  for (std::size_t i = 0; i < l.states_.size(); ++i) {
    ProcessTerm source = l.states_[i];
    for (auto& [a, target] : sorted_successors(source)) {
      // Forward graph is a tree, so every target is new.
      std::size_t j = l.states_.size();
      l.states_.push_back(target);
      l.index_.emplace(target, j);
      l.out_.emplace_back();
      l.in_.push_back(Lts::Edge{a, i});
      l.out_[i].push_back(Lts::Edge{a, j});
      level.push_back(level[i] + 1);
      l.height_ = std::max(l.height_, level[j]);
      l.transitions_.push_back(Transition{source, a, std::move(target)});
    }
  }
  return l;
}

SaturatedLts weak_saturate(const Lts& l) {
  const std::size_t n = l.size();
  // tau closure; children have larger indices than their parent.
  std::vector<std::vector<std::size_t>> closure(n);
  for (std::size_t i = n; i-- > 0;) {
    closure[i].push_back(i);
    for (const auto& e : l.successors(i)) {
      if (e.action.is_tau()) {
        closure[i].insert(closure[i].end(), closure[e.state].begin(),
                          closure[e.state].end());
      }
    }
  }

  SaturatedLts sat{l, std::vector<std::vector<SaturatedLts::WeakEdge>>(n),
                   std::vector<std::vector<SaturatedLts::WeakEdge>>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::pair<Action, std::size_t>> moves;
    for (std::size_t u : closure[i]) {
      moves.emplace(Action::tau(), u);
      for (const auto& e : l.successors(u)) {
        if (!e.action.is_tau()) {
          for (std::size_t v : closure[e.state]) {
            moves.emplace(e.action, v);
          }
        }
      }
    }
    for (const auto& [label, target] : moves) {
      sat.weak_forward[i].push_back({label, target});
      sat.weak_backward[target].push_back({label, i});
    }
  }
  for (auto& moves : sat.weak_backward) {
    std::sort(moves.begin(), moves.end(), [](const auto& a, const auto& b) {
      return std::tie(a.label, a.state) < std::tie(b.label, b.state);
    });
  }
  return sat;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const Lts& l, const std::optional<ProcessTerm>& highlight) {
  std::optional<std::size_t> marked;
  if (highlight) {
    marked = l.index_of(*highlight);
    if (!marked) {
      throw std::invalid_argument("'" + render_term(*highlight) +
                                  "' is not a state of the LTS");
    }
  }
  std::ostringstream out;
  out << "digraph lts {\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    out << "  s" << i << " [label=\"" << dot_escape(render_term(l.state(i)))
        << '"';
    if (i == 0) {
      out << ", shape=doublecircle";
    }
    if (marked == i) {
      out << ", style=filled, fillcolor=lightgrey";
    }
    out << "];\n";
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (const auto& e : l.successors(i)) {
      out << "  s" << i << " -> s" << e.state << " [label=\""
          << dot_escape(e.action.name()) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

StateSpace::StateSpace() { tau_ = intern(Action::tau()); }

StateSpace StateSpace::of_terms(std::span<const ProcessTerm> terms) {
  StateSpace space;
  for (const auto& p : terms) {
    space.add(p);
  }
  return space;
}

std::uint32_t StateSpace::intern(const Action& a) {
  auto [it, inserted] =
      action_ids_.emplace(a, static_cast<std::uint32_t>(actions_.size()));
  if (inserted) {
    actions_.push_back(a);
  }
  return it->second;
}

std::optional<std::uint32_t> StateSpace::find_action(const Action& a) const {
  auto it = action_ids_.find(a);
  if (it == action_ids_.end()) {
    return std::nullopt;
  }
  return it->second;
}

StateId StateSpace::add(const ProcessTerm& p) {
  if (auto s = find(p)) {
    return *s;
  }
  SaturatedLts sat = weak_saturate(build_lts(p));
  const Lts& l = sat.base;
  const auto offset = static_cast<StateId>(terms_.size());
  const std::size_t k = systems_.size();

  for (std::size_t i = 0; i < l.size(); ++i) {
    const ProcessTerm& t = l.state(i);
    terms_.push_back(t);
    renderings_.push_back(render_term(t));
    initial_.push_back(revbisim::is_initial(t) ? 1 : 0);
    system_of_.push_back(k);
    ids_.emplace(t, offset + static_cast<StateId>(i));
  }
  out_.resize(terms_.size());
  in_.resize(terms_.size());
  weak_out_.resize(terms_.size());
  weak_in_.resize(terms_.size());

  auto global = [offset](std::size_t i) {
    return offset + static_cast<StateId>(i);
  };
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (const auto& e : l.successors(i)) {
      std::uint32_t a = intern(e.action);
      out_[global(i)].push_back({a, global(e.state)});
      in_[global(e.state)].push_back({a, global(i)});
    }
    for (const auto& e : sat.weak_forward[i]) {
      weak_out_[global(i)].push_back({intern(e.label), global(e.state)});
    }
    for (const auto& e : sat.weak_backward[i]) {
      weak_in_[global(i)].push_back({intern(e.label), global(e.state)});
    }
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (auto* moves : {&out_[global(i)], &in_[global(i)],
                        &weak_out_[global(i)], &weak_in_[global(i)]}) {
      std::sort(moves->begin(), moves->end());
    }
  }
  systems_.push_back(System{l, offset});
  return id(p);
}

std::optional<StateId> StateSpace::find(const ProcessTerm& p) const {
  auto it = ids_.find(p);
  if (it == ids_.end()) {
    return std::nullopt;
  }
  return it->second;
}

StateId StateSpace::id(const ProcessTerm& p) const {
  auto s = find(p);
  if (!s) {
    throw std::out_of_range("'" + render_term(p) + "' is not in the state space");
  }
  return *s;
}

std::span<const StateSpace::Move> StateSpace::with_action(
    std::span<const Move> moves, std::uint32_t action) {
  auto lo = std::lower_bound(
      moves.begin(), moves.end(), action,
      [](const Move& m, std::uint32_t a) { return m.action < a; });
  auto hi = std::upper_bound(
      lo, moves.end(), action,
      [](std::uint32_t a, const Move& m) { return a < m.action; });
  return {lo, hi};
}

}  // namespace revbisim
