#include "revbisim/diagnose.hh"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "revbisim/logic.hh"
#include "revbisim/parser.hh"

namespace revbisim {

Distinguisher::Distinguisher(EquivKind kind, const StateSpace& space,
                             const RelationTable& table)
    : kind_(kind),
      traits_(traits(kind)),
      space_(&space),
      table_(&table),
      memo_(space.size() * space.size(), -1),
      counts_(space.size() * space.size(), 0),
      checker_(space) {
  if (kind == EquivKind::BB) {
    throw std::invalid_argument("no logical characterization for BB");
  }
}

std::optional<Formula> Distinguisher::operator()(StateId x, StateId y) {
  if (table_->related(x, y)) {
    return std::nullopt;
  }
  return separate(x, y);
}

Formula Distinguisher::modality(bool backward, std::uint32_t action,
                                Formula body) const {
  const Action& a = space_->action(action);
  if (!traits_.weak) {
    return backward ? Formula::back_diamond(a, std::move(body))
                    : Formula::diamond(a, std::move(body));
  }
  if (a.is_tau()) {
    return backward ? Formula::weak_back_tau_diamond(std::move(body))
                    : Formula::weak_tau_diamond(std::move(body));
  }
  return backward ? Formula::weak_back_diamond(a, std::move(body))
                  : Formula::weak_diamond(a, std::move(body));
}

namespace {

bool shallower(const Formula& a, const Formula& b) {
  if (a.depth() != b.depth()) {
    return a.depth() < b.depth();
  }
  return a < b;
}

}  // namespace

Formula Distinguisher::conjoin(std::vector<Formula> parts) const {
  std::sort(parts.begin(), parts.end(), shallower);
  parts.erase(std::unique(parts.begin(), parts.end(),
                          [](const Formula& a, const Formula& b) {
                            return a.id() == b.id() || a == b;
                          }),
              parts.end());
  std::erase_if(parts, [](const Formula& f) {
    return f.connective() == Connective::True;
  });
  if (parts.empty()) {
    return Formula::truth();
  }
  // merge the two shallowest first, which keeps the tree depth minimal
  while (parts.size() > 1) {
    Formula merged = Formula::conjunction(parts[0], parts[1]);
    parts.erase(parts.begin(), parts.begin() + 2);
    auto at = std::upper_bound(
        parts.begin(), parts.end(), merged,
        [](const Formula& a, const Formula& b) { return a.depth() < b.depth(); });
    parts.insert(at, std::move(merged));
  }
  return parts.front();
}

namespace {

// Depth added on top of the operands by conjoin().
std::size_t conjunction_depth(std::vector<std::size_t> depths) {
  std::sort(depths.begin(), depths.end());
  while (depths.size() > 1) {
    std::size_t merged = 1 + std::max(depths[0], depths[1]);
    depths.erase(depths.begin(), depths.begin() + 2);
    depths.insert(std::upper_bound(depths.begin(), depths.end(), merged),
                  merged);
  }
  return depths.empty() ? 0 : depths.front();
}

}  // namespace

// Smallest-depth subset of `parts` whose conjunction still fails at every
// response. parts[i] is known to fail at the i-th response.
std::vector<Formula> Distinguisher::cover(
    std::vector<Formula> parts, std::span<const StateSpace::Move> responses) {
  constexpr std::size_t exhaustive = 12;
  if (parts.size() < 2 || responses.size() > 64) {
    return parts;
  }
  std::sort(parts.begin(), parts.end(), shallower);
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  const std::uint64_t all =
      responses.size() == 64 ? ~0ull : (1ull << responses.size()) - 1;
  std::vector<std::uint64_t> fails(parts.size(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < responses.size(); ++j) {
      if (!checker_.holds(responses[j].state, parts[i])) {
        fails[i] |= 1ull << j;
      }
    }
  }
  if (checker_.memo_size() > (1u << 22)) {
    checker_.clear();
  }
  std::vector<std::size_t> chosen;
  if (parts.size() <= exhaustive) {
    std::pair<std::size_t, std::size_t> best_key{~std::size_t(0), 0};
    std::uint32_t best_set = 0;
    for (std::uint32_t set = 1; set < (1u << parts.size()); ++set) {
      std::uint64_t covered = 0;
      std::vector<std::size_t> depths;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (set >> i & 1) {
          covered |= fails[i];
          depths.push_back(parts[i].depth());
        }
      }
      if (covered != all) {
        continue;
      }
      std::pair<std::size_t, std::size_t> key{conjunction_depth(depths),
                                              depths.size()};
      if (key < best_key) {
        best_key = key;
        best_set = set;
      }
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (best_set >> i & 1) {
        chosen.push_back(i);
      }
    }
  } else {
    // smallest depth cap that still covers, then greedy inside the cap
    std::size_t cap = 0;
    for (const auto& p : parts) {
      std::uint64_t covered = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].depth() <= p.depth()) {
          covered |= fails[i];
        }
      }
      if (covered == all) {
        cap = p.depth();
        break;
      }
    }
    std::uint64_t covered = 0;
    while (covered != all) {
      std::size_t pick = parts.size();
      int gain = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        int g = std::popcount(fails[i] & ~covered);
        if (parts[i].depth() <= cap && g > gain) {
          gain = g;
          pick = i;
        }
      }
      covered |= fails[pick];
      chosen.push_back(pick);
    }
  }
  std::vector<Formula> out;
  for (std::size_t i : chosen) {
    out.push_back(parts[i]);
  }
  return out;
}

Formula Distinguisher::trace_formula(StateId x, StateId y) const {
  auto trace = [&](StateId s) {
    std::vector<std::uint32_t> out;
    while (!space_->in(s).empty()) {
      const auto& m = space_->in(s).front();
      if (!(traits_.weak && m.action == space_->tau())) {
        out.push_back(m.action);
      }
      s = m.state;
    }
    return out;
  };
  const auto tx = trace(x);
  const auto ty = trace(y);
  std::size_t i = 0;
  while (i < tx.size() && i < ty.size() && tx[i] == ty[i]) {
    ++i;
  }
  const std::vector<std::uint32_t>* source = nullptr;
  if (i < tx.size()) {
    source = &tx;
  } else if (i < ty.size()) {
    source = &ty;
  } else {
    throw std::logic_error("unrelated states with equal backward traces");
  }
  Formula f = Formula::truth();
  for (std::size_t j = i + 1; j-- > 0;) {
    f = modality(true, (*source)[j], std::move(f));
  }
  return f;
}

Formula Distinguisher::separate(StateId x, StateId y) {
  return candidates(x, y).front();
}

std::span<const Formula> Distinguisher::candidates(StateId x, StateId y) {
  const std::size_t cell = std::size_t(x) * space_->size() + y;
  if (memo_[cell] >= 0) {
    return {pool_.data() + memo_[cell], counts_[cell]};
  }
  const StateSpace& s = *space_;
  // (depth, action, target, side) -> formula
  using Key = std::tuple<std::size_t, std::string, std::string, int>;
  std::vector<std::pair<Key, Formula>> found;
  if (kind_ == EquivKind::RB || kind_ == EquivKind::wRB) {
    found.push_back({Key{}, trace_formula(x, y)});
  } else if (table_->round(x, y) == 0) {
    found.push_back({Key{}, s.is_initial(x) ? Formula::init()
                                            : Formula::negation(Formula::init())});
  } else {
    const std::uint16_t k = table_->round(x, y);
    for (int side = 0; side < 2; ++side) {
      const StateId c = side == 0 ? x : y;
      const StateId o = side == 0 ? y : x;
      for (int backward = 0; backward < 2; ++backward) {
        if (backward ? !traits_.backward : !traits_.forward) {
          continue;
        }
        // weak kinds: any saturated move of the challenger; strong steps
        // are among them
        auto challenges = backward ? (traits_.weak ? s.weak_in(c) : s.in(c))
                                   : (traits_.weak ? s.weak_out(c) : s.out(c));
        for (const auto& m : challenges) {
          auto pool = backward ? (traits_.weak ? s.weak_in(o) : s.in(o))
                               : (traits_.weak ? s.weak_out(o) : s.out(o));
          auto responses = StateSpace::with_action(pool, m.action);
          bool usable = std::all_of(
              responses.begin(), responses.end(), [&](const auto& r) {
                return table_->round(m.state, r.state) < k;
              });
          if (!usable) {
            continue;
          }
          std::vector<Formula> parts;
          for (const auto& r : responses) {
            auto c = candidates(m.state, r.state);
            parts.insert(parts.end(), c.begin(), c.end());
          }
          Formula f = modality(backward != 0, m.action,
                               conjoin(cover(std::move(parts), responses)));
          if (side == 1) {
            f = Formula::negation(std::move(f));
          }
          found.push_back({Key{f.depth(), s.action(m.action).name(),
                               s.rendering(m.state), side},
                           std::move(f)});
        }
      }
    }
    if (found.empty()) {
      throw std::logic_error("removed pair without a failing challenge");
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  const auto start = static_cast<std::int32_t>(pool_.size());
  std::uint8_t count = 0;
  for (auto& [key, f] : found) {
    if (count == kCandidates) {
      break;
    }
    if (std::find(pool_.begin() + start, pool_.end(), f) == pool_.end()) {
      pool_.push_back(std::move(f));
      ++count;
    }
  }
  memo_[cell] = start;
  counts_[cell] = count;
  return {pool_.data() + start, count};
}

std::optional<Formula> distinguish(EquivKind kind, const ProcessTerm& p1,
                                   const ProcessTerm& p2) {
  require_reachable(p1);
  require_reachable(p2);
  if (kind == EquivKind::BB) {
    throw std::invalid_argument("no logical characterization for BB");
  }
  StateSpace space;
  space.add(p1);
  space.add(p2);
  RelationTable table = greatest_relation(kind, space);
  Distinguisher d(kind, space, table);
  return d(space.id(p1), space.id(p2));
}

std::vector<Formula> enumerate_formulas(const FragmentSpec& spec,
                                        const std::set<Action>& alphabet,
                                        std::size_t max_depth) {
  if (max_depth == 0) {
    throw std::invalid_argument("max_depth must be positive");
  }
  std::vector<Action> visible;
  for (const auto& a : alphabet) {
    if (!a.is_tau()) {
      visible.push_back(a);
    }
  }
  auto by_order = [](const Formula& a, const Formula& b) { return a < b; };
  std::vector<std::vector<Formula>> layers(1);
  layers[0].push_back(Formula::truth());
  if (spec.permits(Connective::Init)) {
    layers[0].push_back(Formula::init());
  }
  std::sort(layers[0].begin(), layers[0].end(), by_order);

  for (std::size_t d = 2; d <= max_depth; ++d) {
    const auto& prev = layers[d - 2];
    std::vector<Formula> next;
    for (const auto& f : prev) {
      if (spec.permits(Connective::Not) && f.connective() != Connective::Not) {
        next.push_back(Formula::negation(f));
      }
      for (const auto& a : alphabet) {
        if (spec.permits(Connective::Diamond)) {
          next.push_back(Formula::diamond(a, f));
        }
        if (spec.permits(Connective::BackDiamond)) {
          next.push_back(Formula::back_diamond(a, f));
        }
      }
      if (spec.permits(Connective::WeakTauDiamond)) {
        next.push_back(Formula::weak_tau_diamond(f));
      }
      if (spec.permits(Connective::WeakBackTauDiamond)) {
        next.push_back(Formula::weak_back_tau_diamond(f));
      }
      for (const auto& a : visible) {
        if (spec.permits(Connective::WeakDiamond)) {
          next.push_back(Formula::weak_diamond(a, f));
        }
        if (spec.permits(Connective::WeakBackDiamond)) {
          next.push_back(Formula::weak_back_diamond(a, f));
        }
      }
    }
    if (spec.permits(Connective::And)) {
      auto pair = [&](const Formula& a, const Formula& b) {
        if (a.connective() == Connective::True ||
            b.connective() == Connective::True) {
          return;
        }
        next.push_back(a < b ? Formula::conjunction(a, b)
                             : Formula::conjunction(b, a));
      };
      for (std::size_t i = 0; i < prev.size(); ++i) {
        for (std::size_t j = i + 1; j < prev.size(); ++j) {
          pair(prev[i], prev[j]);
        }
        for (std::size_t lower = 0; lower + 2 < d; ++lower) {
          for (const auto& g : layers[lower]) {
            pair(prev[i], g);
          }
        }
      }
    }
    std::sort(next.begin(), next.end(), by_order);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layers.push_back(std::move(next));
  }
  std::vector<Formula> out;
  for (auto& layer : layers) {
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::string CharacterizationReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kind"] = std::string(to_string(kind));
  j["corpus"] = corpus_id;
  j["max_depth"] = max_depth;
  j["formulas_enumerated"] = formulas_enumerated;
  j["pairs_checked"] = pairs_checked;
  j["agreements"] = agreements;
  j["equivalent_pairs"] = equivalent_pairs;
  j["largest_formula_depth"] = largest_formula_depth;
  auto list = nlohmann::ordered_json::array();
  for (const auto& m : mismatches) {
    nlohmann::ordered_json e;
    e["left"] = render_term(m.left);
    e["right"] = render_term(m.right);
    e["direction"] = m.direction;
    e["detail"] = m.detail;
    list.push_back(std::move(e));
  }
  j["mismatches"] = std::move(list);
  return j.dump(2);
}

CharacterizationReport verify_characterization(
    EquivKind kind, const std::vector<ProcessTerm>& corpus,
    std::size_t max_depth, std::string corpus_id) {
  const auto fragment_name = fragment_of(kind);
  if (!fragment_name) {
    throw std::invalid_argument("no logical characterization for BB");
  }
  const FragmentSpec spec = fragment(*fragment_name);

  std::vector<ProcessTerm> terms = corpus;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  StateSpace space;
  std::set<Action> letters;
  for (const auto& p : terms) {
    require_reachable(p);
    space.add(p);
    auto more = alphabet(p);
    letters.insert(more.begin(), more.end());
  }
  std::vector<StateId> ids;
  for (const auto& p : terms) {
    ids.push_back(space.id(p));
  }
  const RelationTable table = greatest_relation(kind, space);

  CharacterizationReport report;
  report.kind = kind;
  report.corpus_id = std::move(corpus_id);
  report.max_depth = max_depth;
  const std::size_t m = ids.size();
  report.pairs_checked = m * (m - (m > 0 ? 1 : 0)) / 2;

  // the relation must be an equivalence for class-wise checking
  std::vector<std::size_t> cls(m);
  for (std::size_t i = 0; i < m; ++i) {
    cls[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (table.related(ids[i], ids[j])) {
        cls[i] = cls[j];
        break;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (table.related(ids[i], ids[j]) != (cls[i] == cls[j])) {
        report.mismatches.push_back(
            {terms[i], terms[j], "not-an-equivalence", ""});
      }
    }
  }

  // equivalent pairs: no enumerated formula may split them
  const auto formulas = enumerate_formulas(spec, letters, max_depth);
  report.formulas_enumerated = formulas.size();
  {
    ModelChecker mc(space);
    std::vector<boost::dynamic_bitset<>> print(m,
                                               boost::dynamic_bitset<>(formulas.size()));
    for (std::size_t f = 0; f < formulas.size(); ++f) {
      const auto& ext = mc.extension(formulas[f]);
      for (std::size_t i = 0; i < m; ++i) {
        print[i][f] = ext[ids[i]];
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (cls[i] != cls[j] || !table.related(ids[i], ids[j])) {
          continue;
        }
        ++report.equivalent_pairs;
        if (print[i] != print[j]) {
          auto diff = print[i] ^ print[j];
          report.mismatches.push_back(
              {terms[i], terms[j], "equivalent-but-split",
               render_formula(formulas[diff.find_first()])});
        } else {
          ++report.agreements;
        }
      }
    }
  }

  // inequivalent pairs: the constructed formula must split them
  Distinguisher d(kind, space, table);
  ModelChecker mc(space);
  std::unordered_map<std::uint64_t, bool> allowed;
  auto fragment_ok = [&](auto&& self, const Formula& f) -> bool {
    if (auto it = allowed.find(f.id()); it != allowed.end()) {
      return it->second;
    }
    bool ok = spec.permits(f.connective());
    if (ok) {
      switch (f.connective()) {
        case Connective::True:
        case Connective::Init:
          break;
        case Connective::And:
        case Connective::Until:
          ok = self(self, f.left()) && self(self, f.right());
          break;
        default:
          ok = self(self, f.operand());
      }
    }
    allowed.emplace(f.id(), ok);
    return ok;
  };
  constexpr std::size_t memo_limit = 1 << 22;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const StateId x = ids[i];
      const StateId y = ids[j];
      if (table.related(x, y)) {
        continue;
      }
      auto f = d(x, y);
      if (!f) {
        report.mismatches.push_back({terms[i], terms[j], "no-formula", ""});
        continue;
      }
      report.largest_formula_depth =
          std::max(report.largest_formula_depth, f->depth());
      const std::size_t bound =
          2 * (space.system(space.system_of(x)).height() +
               space.system(space.system_of(y)).height()) + 3;
      if (!fragment_ok(fragment_ok, *f)) {
        report.mismatches.push_back(
            {terms[i], terms[j], "not-in-fragment", render_formula(*f)});
      } else if (mc.holds(x, *f) == mc.holds(y, *f)) {
        report.mismatches.push_back(
            {terms[i], terms[j], "does-not-split", render_formula(*f)});
      } else if (f->depth() > bound) {
        report.mismatches.push_back(
            {terms[i], terms[j], "depth-bound",
             std::to_string(f->depth()) + " > " + std::to_string(bound)});
      } else {
        ++report.agreements;
      }
      if (mc.memo_size() > memo_limit) {
        mc.clear();
      }
    }
  }
  return report;
}

}  // namespace revbisim
