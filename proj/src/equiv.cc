#include "revbisim/equiv.hh"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "revbisim/diagnose.hh"
#include "revbisim/parser.hh"

namespace revbisim {

std::string_view to_string(EquivKind kind) {
  switch (kind) {
    case EquivKind::FB: return "FB";
    case EquivKind::FBps: return "FBps";
    case EquivKind::RB: return "RB";
    case EquivKind::FRB: return "FRB";
    case EquivKind::wFB: return "wFB";
    case EquivKind::wFBps: return "wFBps";
    case EquivKind::wRB: return "wRB";
    case EquivKind::wFRB: return "wFRB";
    case EquivKind::wFRBps: return "wFRBps";
    case EquivKind::BB: return "BB";
  }
  return "?";
}

std::optional<EquivKind> kind_from_string(std::string_view token) {
  for (EquivKind k : all_kinds) {
    if (to_string(k) == token) {
      return k;
    }
  }
  return std::nullopt;
}

KindTraits traits(EquivKind kind) {
  switch (kind) {
    case EquivKind::FB: return {true, false, false, false};
    case EquivKind::FBps: return {true, false, false, true};
    case EquivKind::RB: return {false, true, false, false};
    case EquivKind::FRB: return {true, true, false, false};
    case EquivKind::wFB: return {true, false, true, false};
    case EquivKind::wFBps: return {true, false, true, true};
    case EquivKind::wRB: return {false, true, true, false};
    case EquivKind::wFRB: return {true, true, true, false};
    case EquivKind::wFRBps: return {true, true, true, true};
    case EquivKind::BB: return {true, false, true, false};
  }
  return {};
}

std::optional<FragmentName> fragment_of(EquivKind kind) {
  switch (kind) {
    case EquivKind::FB: return FragmentName::FB;
    case EquivKind::FBps: return FragmentName::FBps;
    case EquivKind::RB: return FragmentName::RB;
    case EquivKind::FRB: return FragmentName::FRB;
    case EquivKind::wFB: return FragmentName::WeakFB;
    case EquivKind::wFBps: return FragmentName::WeakFBps;
    case EquivKind::wRB: return FragmentName::WeakRB;
    case EquivKind::wFRB: return FragmentName::WeakFRB;
    case EquivKind::wFRBps: return FragmentName::WeakFRBps;
    case EquivKind::BB: return std::nullopt;
  }
  return std::nullopt;
}

RelationTable::RelationTable(std::size_t n)
    : n_(n), cells_(n * n, kRelated) {}

namespace {

// One direction of the transfer conditions: every challenge of x is
// answered by y. `rel` decides membership of the current relation.
template <class Rel>
bool answered(EquivKind kind, const StateSpace& s, StateId x, StateId y,
              const Rel& rel) {
  const KindTraits t = traits(kind);
  if (kind == EquivKind::BB) {
    for (const auto& m : s.out(x)) {
      if (m.action == s.tau() && rel(m.state, y)) {
        continue;
      }
      bool ok = false;
      for (const auto& mid : StateSpace::with_action(s.weak_out(y), s.tau())) {
        if (!rel(x, mid.state)) {
          continue;
        }
        for (const auto& r : StateSpace::with_action(s.out(mid.state), m.action)) {
          if (rel(m.state, r.state)) {
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
      if (!ok) {
        return false;
      }
    }
    return true;
  }
  auto matched = [&](std::span<const StateSpace::Move> responses,
                     StateId target) {
    for (const auto& r : responses) {
      if (rel(target, r.state)) {
        return true;
      }
    }
    return false;
  };
  if (t.forward) {
    for (const auto& m : s.out(x)) {
      auto responses = StateSpace::with_action(
          t.weak ? s.weak_out(y) : s.out(y), m.action);
      if (!matched(responses, m.state)) {
        return false;
      }
    }
  }
  if (t.backward) {
    for (const auto& m : s.in(x)) {
      auto responses = StateSpace::with_action(
          t.weak ? s.weak_in(y) : s.in(y), m.action);
      if (!matched(responses, m.state)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

RelationTable greatest_relation(EquivKind kind, const StateSpace& space) {
  const auto n = static_cast<StateId>(space.size());
  RelationTable table(n);
  std::vector<std::pair<StateId, StateId>> live;
  for (StateId x = 0; x < n; ++x) {
    for (StateId y = x + 1; y < n; ++y) {
      if (traits(kind).past_sensitive &&
          space.is_initial(x) != space.is_initial(y)) {
        table.remove(x, y, 0);
      } else {
        live.emplace_back(x, y);
      }
    }
  }
  std::uint16_t k = 1;
  for (;; ++k) {
    // related after round k-1; removals of this round carry k and still
    // count as related until the round ends
    auto rel = [&](StateId a, StateId b) { return table.round(a, b) >= k; };
    bool changed = false;
    for (auto& [x, y] : live) {
      if (!answered(kind, space, x, y, rel) ||
          !answered(kind, space, y, x, rel)) {
        table.remove(x, y, k);
        changed = true;
      }
    }
    if (!changed) {
      break;
    }
    std::erase_if(live, [&](const auto& p) {
      return !table.related(p.first, p.second);
    });
  }
  table.rounds_ = k;
  return table;
}

bool is_bisimulation(EquivKind kind, const StateSpace& space,
                     const std::vector<std::pair<StateId, StateId>>& pairs) {
  std::set<std::pair<StateId, StateId>> rel;
  for (const auto& [x, y] : pairs) {
    rel.emplace(x, y);
    rel.emplace(y, x);
  }
  auto in = [&](StateId a, StateId b) { return rel.count({a, b}) > 0; };
  for (const auto& [x, y] : rel) {
    if (traits(kind).past_sensitive &&
        space.is_initial(x) != space.is_initial(y)) {
      return false;
    }
    if (!answered(kind, space, x, y, in)) {
      return false;
    }
  }
  return true;
}

namespace {

std::vector<StateId> states_of(const StateSpace& space, std::size_t k) {
  std::vector<StateId> out;
  const StateId offset = space.system_offset(k);
  for (std::size_t i = 0; i < space.system(k).size(); ++i) {
    out.push_back(offset + static_cast<StateId>(i));
  }
  return out;
}

std::vector<StateId> union_states(const StateSpace& space, StateId a,
                                  StateId b) {
  std::vector<StateId> out = states_of(space, space.system_of(a));
  if (space.system_of(b) != space.system_of(a)) {
    auto more = states_of(space, space.system_of(b));
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

void sort_pairs(WitnessRelation& w) {
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> keys;
  for (std::size_t i = 0; i < w.size(); ++i) {
    keys.push_back({{render_term(w[i].first), render_term(w[i].second)}, i});
  }
  std::sort(keys.begin(), keys.end());
  WitnessRelation sorted;
  for (const auto& k : keys) {
    sorted.push_back(w[k.second]);
  }
  w = std::move(sorted);
}

}  // namespace

WitnessRelation relation_fixpoint(EquivKind kind, const Lts& l1,
                                  const Lts& l2) {
  StateSpace space;
  StateId r1 = space.add(l1.root());
  StateId r2 = space.add(l2.root());
  RelationTable table = greatest_relation(kind, space);
  WitnessRelation out;
  auto all = union_states(space, r1, r2);
  for (StateId x : all) {
    for (StateId y : all) {
      if (table.related(x, y)) {
        out.emplace_back(space.term(x), space.term(y));
      }
    }
  }
  sort_pairs(out);
  return out;
}

std::vector<std::size_t> refine_partition(EquivKind kind,
                                          const StateSpace& space) {
  if (kind == EquivKind::BB) {
    throw std::invalid_argument("refine_partition does not support BB");
  }
  const KindTraits t = traits(kind);
  const std::size_t n = space.size();
  std::vector<std::size_t> block(n, 0);
  std::size_t count = 1;
  if (t.past_sensitive) {
    for (StateId s = 0; s < n; ++s) {
      block[s] = space.is_initial(s) ? 0 : 1;
    }
    count = 2;
  }
  // (direction, action, block); direction 0 = outgoing, 1 = incoming
  using Signature =
      std::pair<std::size_t, std::vector<std::tuple<int, std::uint32_t, std::size_t>>>;
  for (;;) {
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (StateId s = 0; s < n; ++s) {
      Signature sig{block[s], {}};
      if (t.forward) {
        for (const auto& m : t.weak ? space.weak_out(s) : space.out(s)) {
          sig.second.emplace_back(0, m.action, block[m.state]);
        }
      }
      if (t.backward) {
        for (const auto& m : t.weak ? space.weak_in(s) : space.in(s)) {
          sig.second.emplace_back(1, m.action, block[m.state]);
        }
      }
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()),
                       sig.second.end());
      next[s] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    block = std::move(next);
    if (ids.size() == count) {
      return block;
    }
    count = ids.size();
  }
}

std::vector<std::vector<ProcessTerm>> refine_partition(EquivKind kind,
                                                       const Lts& l1,
                                                       const Lts& l2) {
  StateSpace space;
  StateId r1 = space.add(l1.root());
  StateId r2 = space.add(l2.root());
  auto block = refine_partition(kind, space);
  std::map<std::size_t, std::vector<std::string>> groups;
  for (StateId s : union_states(space, r1, r2)) {
    groups[block[s]].push_back(space.rendering(s));
  }
  std::vector<std::vector<std::string>> texts;
  for (auto& [id, members] : groups) {
    std::sort(members.begin(), members.end());
    texts.push_back(std::move(members));
  }
  std::sort(texts.begin(), texts.end());
  std::vector<std::vector<ProcessTerm>> out;
  for (const auto& members : texts) {
    auto& b = out.emplace_back();
    for (const auto& m : members) {
      b.push_back(parse_term(m));
    }
  }
  return out;
}

std::string EquivalenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kind"] = std::string(to_string(kind));
  j["left"] = render_term(left);
  j["right"] = render_term(right);
  j["equivalent"] = equivalent;
  auto w = nlohmann::ordered_json::array();
  for (const auto& [x, y] : witness) {
    w.push_back({render_term(x), render_term(y)});
  }
  j["witness"] = std::move(w);
  if (distinguishing) {
    j["distinguishing"] = render_formula(*distinguishing);
  } else {
    j["distinguishing"] = nullptr;
  }
  return j.dump(2);
}

EquivalenceReport bisimilar(EquivKind kind, const ProcessTerm& p1,
                            const ProcessTerm& p2) {
  require_reachable(p1);
  require_reachable(p2);
  StateSpace space;
  space.add(p1);
  space.add(p2);
  const StateId x = space.id(p1);
  const StateId y = space.id(p2);
  RelationTable table = greatest_relation(kind, space);

  EquivalenceReport report{kind, p1, p2, table.related(x, y), {}, {}};
  if (report.equivalent) {
    std::vector<std::pair<StateId, StateId>> pairs;
    for (StateId u : states_of(space, space.system_of(x))) {
      for (StateId v : states_of(space, space.system_of(y))) {
        if (table.related(u, v)) {
          pairs.emplace_back(u, v);
          report.witness.emplace_back(space.term(u), space.term(v));
        }
      }
    }
    if (!is_bisimulation(kind, space, pairs)) {
      throw std::logic_error("witness relation fails the transfer conditions");
    }
    sort_pairs(report.witness);
  } else if (kind != EquivKind::BB) {
    Distinguisher d(kind, space, table);
    report.distinguishing = d(x, y);
  }
  return report;
}

std::vector<Action> backward_trace(const ProcessTerm& p, bool weak) {
  require_reachable(p);
  std::vector<Action> out;
  ProcessTerm cur = p;
  while (auto back = backstep(cur)) {
    if (!(weak && back->first.is_tau())) {
      out.push_back(back->first);
    }
    cur = back->second;
  }
  return out;
}

std::vector<std::vector<StateId>> stuttering_violations(
    EquivKind kind, const StateSpace& space, const RelationTable& table,
    std::size_t system) {
  std::vector<std::vector<StateId>> found;
  std::vector<StateId> path;
  // `broken`: some state after s0 on the path is unrelated to s0
  auto extend = [&](auto&& self, bool broken) -> void {
    const StateId s0 = path.front();
    for (const auto& m :
         StateSpace::with_action(space.out(path.back()), space.tau())) {
      path.push_back(m.state);
      if (table.related(s0, m.state) && broken) {
        found.push_back(path);
      }
      self(self, broken || !table.related(s0, m.state));
      path.pop_back();
    }
  };
  for (StateId s0 : states_of(space, system)) {
    if (kind == EquivKind::wFRBps && space.is_initial(s0)) {
      continue;
    }
    path.assign(1, s0);
    extend(extend, false);
  }
  return found;
}

std::vector<std::vector<ProcessTerm>> stuttering_violations(const Lts& l) {
  StateSpace space;
  StateId root = space.add(l.root());
  RelationTable table = greatest_relation(EquivKind::wFRB, space);
  std::vector<std::vector<ProcessTerm>> out;
  for (const auto& chain : stuttering_violations(
           EquivKind::wFRB, space, table, space.system_of(root))) {
    auto& terms = out.emplace_back();
    for (StateId s : chain) {
      terms.push_back(space.term(s));
    }
  }
  return out;
}

std::vector<CrossViolation> cross_violations(const StateSpace& space,
                                             const RelationTable& table,
                                             std::size_t k1, std::size_t k2) {
  std::vector<CrossViolation> found;
  if (!table.related(space.system_offset(k1), space.system_offset(k2))) {
    return found;
  }
  auto tau_pairs = [&](std::size_t k) {
    std::vector<std::pair<StateId, StateId>> out;
    for (StateId s : states_of(space, k)) {
      for (const auto& m :
           StateSpace::with_action(space.weak_out(s), space.tau())) {
        out.emplace_back(s, m.state);
      }
    }
    return out;
  };
  const auto seq1 = tau_pairs(k1);
  const auto seq2 = tau_pairs(k2);
  for (const auto& [a1, b1] : seq1) {
    for (const auto& [a2, b2] : seq2) {
      if (table.related(a1, b2) && table.related(b1, a2) &&
          !table.related(b1, b2)) {
        found.push_back({a1, b1, a2, b2});
      }
    }
  }
  return found;
}

std::vector<std::array<ProcessTerm, 4>> cross_violations(const Lts& l1,
                                                         const Lts& l2) {
  StateSpace space;
  StateId r1 = space.add(l1.root());
  StateId r2 = space.add(l2.root());
  RelationTable table = greatest_relation(EquivKind::wFRB, space);
  std::vector<std::array<ProcessTerm, 4>> out;
  for (const auto& v : cross_violations(space, table, space.system_of(r1),
                                        space.system_of(r2))) {
    out.push_back({space.term(v.first1), space.term(v.second1),
                   space.term(v.first2), space.term(v.second2)});
  }
  return out;
}

}  // namespace revbisim
