#include "revbisim/logic.hh"

namespace revbisim {

bool satisfies(const ProcessTerm& p, const Formula& f) {
  StateSpace space;
  StateId s = space.add(p);
  ModelChecker mc(space);
  return mc.holds(s, f);
}

void ModelChecker::clear() {
  extensions_.clear();
  memo_.clear();
}

std::optional<std::uint32_t> ModelChecker::action_id(const Formula& f) const {
  switch (f.connective()) {
    case Connective::WeakTauDiamond:
    case Connective::WeakBackTauDiamond:
      return space_->tau();
    default:
      return space_->find_action(f.action());
  }
}

const boost::dynamic_bitset<>& ModelChecker::extension(const Formula& f) {
  if (auto it = extensions_.find(f.id()); it != extensions_.end()) {
    return it->second;
  }
  const StateSpace& s = *space_;
  const std::size_t n = s.size();
  boost::dynamic_bitset<> out(n);

  auto modal = [&](auto moves_of) {
    const auto& inner = extension(f.operand());
    auto a = action_id(f);
    if (!a) {
      return;
    }
    for (StateId x = 0; x < n; ++x) {
      for (const auto& m : StateSpace::with_action(moves_of(x), *a)) {
        if (inner[m.state]) {
          out.set(x);
          break;
        }
      }
    }
  };

  switch (f.connective()) {
    case Connective::True:
      out.set();
      break;
    case Connective::Init:
      for (StateId x = 0; x < n; ++x) {
        out[x] = s.is_initial(x);
      }
      break;
    case Connective::Not:
      out = ~extension(f.operand());
      break;
    case Connective::And: {
      out = extension(f.left());
      out &= extension(f.right());
      break;
    }
    case Connective::Diamond:
      modal([&](StateId x) { return s.out(x); });
      break;
    case Connective::BackDiamond:
      modal([&](StateId x) { return s.in(x); });
      break;
    case Connective::WeakTauDiamond:
    case Connective::WeakDiamond:
      modal([&](StateId x) { return s.weak_out(x); });
      break;
    case Connective::WeakBackTauDiamond:
    case Connective::WeakBackDiamond:
      modal([&](StateId x) { return s.weak_in(x); });
      break;
    case Connective::Until: {
      const auto hold = extension(f.left());
      const auto& reach = extension(f.right());
      auto a = action_id(f);
      boost::dynamic_bitset<> path(n);
      // tau successors carry larger ids than their source
      for (StateId x = static_cast<StateId>(n); x-- > 0;) {
        if (!hold[x]) {
          continue;
        }
        bool ok = false;
        if (a) {
          for (const auto& m : StateSpace::with_action(s.out(x), *a)) {
            ok = ok || reach[m.state];
          }
        }
        for (const auto& m : StateSpace::with_action(s.out(x), s.tau())) {
          ok = ok || path[m.state];
        }
        path[x] = ok;
      }
      out = path;
      if (f.action().is_tau()) {
        out |= reach;
      }
      break;
    }
  }
  return extensions_.emplace(f.id(), std::move(out)).first->second;
}

bool ModelChecker::until_path(StateId x, const Formula& f) {
  Key key{f.id() << 1 | 1, x};
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }
  bool ok = false;
  if (holds(x, f.left())) {
    if (auto a = action_id(f)) {
      for (const auto& m : StateSpace::with_action(space_->out(x), *a)) {
        if (holds(m.state, f.right())) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      for (const auto& m :
           StateSpace::with_action(space_->out(x), space_->tau())) {
        if (until_path(m.state, f)) {
          ok = true;
          break;
        }
      }
    }
  }
  memo_.emplace(key, ok);
  return ok;
}

bool ModelChecker::holds(StateId x, const Formula& f) {
  switch (f.connective()) {
    case Connective::True:
      return true;
    case Connective::Init:
      return space_->is_initial(x);
    default:
      break;
  }
  if (auto it = extensions_.find(f.id()); it != extensions_.end()) {
    return it->second[x];
  }
  Key key{f.id() << 1, x};
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }

  auto modal = [&](std::span<const StateSpace::Move> moves) {
    auto a = action_id(f);
    if (!a) {
      return false;
    }
    for (const auto& m : StateSpace::with_action(moves, *a)) {
      if (holds(m.state, f.operand())) {
        return true;
      }
    }
    return false;
  };

  bool value = false;
  switch (f.connective()) {
    case Connective::Not:
      value = !holds(x, f.operand());
      break;
    case Connective::And:
      value = holds(x, f.left()) && holds(x, f.right());
      break;
    case Connective::Diamond:
      value = modal(space_->out(x));
      break;
    case Connective::BackDiamond:
      value = modal(space_->in(x));
      break;
    case Connective::WeakTauDiamond:
    case Connective::WeakDiamond:
      value = modal(space_->weak_out(x));
      break;
    case Connective::WeakBackTauDiamond:
    case Connective::WeakBackDiamond:
      value = modal(space_->weak_in(x));
      break;
    case Connective::Until:
      value = (f.action().is_tau() && holds(x, f.right())) || until_path(x, f);
      break;
    default:
      break;
  }
  memo_.emplace(key, value);
  return value;
}

}  // namespace revbisim
