#include "revbisim/formula.hh"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace revbisim {

std::string_view connective_name(Connective c) {
  switch (c) {
    case Connective::True: return "true";
    case Connective::Init: return "init";
    case Connective::Not: return "not";
    case Connective::And: return "and";
    case Connective::Diamond: return "diamond";
    case Connective::BackDiamond: return "back-diamond";
    case Connective::WeakTauDiamond: return "weak-tau-diamond";
    case Connective::WeakDiamond: return "weak-diamond";
    case Connective::WeakBackTauDiamond: return "weak-back-tau-diamond";
    case Connective::WeakBackDiamond: return "weak-back-diamond";
    case Connective::Until: return "until";
  }
  return "?";
}

namespace {

std::uint64_t next_formula_id() {
  static std::atomic<std::uint64_t> counter{0};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

struct Formula::Node {
  Connective connective;
  std::optional<Action> action;
  std::vector<Formula> operands;
  std::size_t depth;
  std::uint64_t id;
};

Formula Formula::make(Connective c, std::optional<Action> action,
                      std::vector<Formula> operands) {
  std::size_t d = 0;
  for (const auto& f : operands) {
    d = std::max(d, f.depth());
  }
  return Formula(std::make_shared<const Node>(
      Node{c, std::move(action), std::move(operands), d + 1,
           next_formula_id()}));
}

Formula::Formula() : Formula(truth()) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::truth() {
  static const Formula tt = make(Connective::True, std::nullopt, {});
  return tt;
}

Formula Formula::init() {
  static const Formula init = make(Connective::Init, std::nullopt, {});
  return init;
}

Formula Formula::negation(Formula operand) {
  return make(Connective::Not, std::nullopt, {std::move(operand)});
}

Formula Formula::conjunction(Formula left, Formula right) {
  return make(Connective::And, std::nullopt,
              {std::move(left), std::move(right)});
}

Formula Formula::diamond(Action action, Formula operand) {
  return make(Connective::Diamond, std::move(action), {std::move(operand)});
}

Formula Formula::back_diamond(Action action, Formula operand) {
  return make(Connective::BackDiamond, std::move(action), {std::move(operand)});
}

Formula Formula::weak_tau_diamond(Formula operand) {
  return make(Connective::WeakTauDiamond, std::nullopt, {std::move(operand)});
}

Formula Formula::weak_diamond(Action action, Formula operand) {
  if (action.is_tau()) {
    throw std::invalid_argument("weak visible modality on tau");
  }
  return make(Connective::WeakDiamond, std::move(action), {std::move(operand)});
}

Formula Formula::weak_back_tau_diamond(Formula operand) {
  return make(Connective::WeakBackTauDiamond, std::nullopt,
              {std::move(operand)});
}

Formula Formula::weak_back_diamond(Action action, Formula operand) {
  if (action.is_tau()) {
    throw std::invalid_argument("weak visible modality on tau");
  }
  return make(Connective::WeakBackDiamond, std::move(action),
              {std::move(operand)});
}

Formula Formula::until(Formula hold, Action action, Formula reach) {
  return make(Connective::Until, std::move(action),
              {std::move(hold), std::move(reach)});
}

Connective Formula::connective() const { return node_->connective; }

const Action& Formula::action() const {
  if (!node_->action) {
    throw std::logic_error("formula has no action");
  }
  return *node_->action;
}

const Formula& Formula::operand() const {
  switch (connective()) {
    case Connective::True:
    case Connective::Init:
    case Connective::And:
    case Connective::Until:
      throw std::logic_error("formula has no single operand");
    default:
      break;
  }
  return node_->operands[0];
}

const Formula& Formula::left() const {
  if (connective() != Connective::And && connective() != Connective::Until) {
    throw std::logic_error("formula is not binary");
  }
  return node_->operands[0];
}

const Formula& Formula::right() const {
  if (connective() != Connective::And && connective() != Connective::Until) {
    throw std::logic_error("formula is not binary");
  }
  return node_->operands[1];
}

std::size_t Formula::depth() const { return node_->depth; }

std::uint64_t Formula::id() const { return node_->id; }

bool operator==(const Formula& a, const Formula& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) {
    return std::strong_ordering::equal;
  }
  if (auto c = a.connective() <=> b.connective(); c != 0) {
    return c;
  }
  if (auto c = a.node_->action <=> b.node_->action; c != 0) {
    return c;
  }
  switch (a.connective()) {
    case Connective::True:
    case Connective::Init:
      return std::strong_ordering::equal;
    case Connective::And:
    case Connective::Until:
      if (auto c = a.left() <=> b.left(); c != 0) {
        return c;
      }
      return a.right() <=> b.right();
    default:
      return a.operand() <=> b.operand();
  }
}

std::size_t depth(const Formula& f) { return f.depth(); }

bool FragmentSpec::permits(Connective c) const {
  if (c == Connective::Until) {
    return allow_until;
  }
  return allowed.contains(c);
}

FragmentSpec fragment(FragmentName name) {
  using C = Connective;
  switch (name) {
    case FragmentName::FB:
      return {name, {C::True, C::Not, C::And, C::Diamond}};
    case FragmentName::FBps:
      return {name, {C::True, C::Init, C::Not, C::And, C::Diamond}};
    case FragmentName::RB:
      return {name, {C::True, C::BackDiamond}};
    case FragmentName::FRB:
      return {name, {C::True, C::Not, C::And, C::Diamond, C::BackDiamond}};
    case FragmentName::WeakFB:
      return {name, {C::True, C::Not, C::And, C::WeakTauDiamond,
                     C::WeakDiamond}};
    case FragmentName::WeakFBps:
      return {name, {C::True, C::Init, C::Not, C::And, C::WeakTauDiamond,
                     C::WeakDiamond}};
    case FragmentName::WeakRB:
      return {name, {C::True, C::WeakBackTauDiamond, C::WeakBackDiamond}};
    case FragmentName::WeakFRB:
      return {name, {C::True, C::Not, C::And, C::WeakTauDiamond,
                     C::WeakDiamond, C::WeakBackTauDiamond,
                     C::WeakBackDiamond}};
    case FragmentName::WeakFRBps:
      return {name, {C::True, C::Init, C::Not, C::And, C::WeakTauDiamond,
                     C::WeakDiamond, C::WeakBackTauDiamond,
                     C::WeakBackDiamond}};
  }
  throw std::logic_error("unknown fragment");
}

namespace {

struct FragmentNames {
  FragmentName name;
  std::string_view label;
  std::string_view token;
};

constexpr FragmentNames kFragmentNames[] = {
    {FragmentName::FB, "L_FB", "FB"},
    {FragmentName::FBps, "L_FBps", "FBps"},
    {FragmentName::RB, "L_RB", "RB"},
    {FragmentName::FRB, "L_FRB", "FRB"},
    {FragmentName::WeakFB, "Ltau_FB", "wFB"},
    {FragmentName::WeakFBps, "Ltau_FBps", "wFBps"},
    {FragmentName::WeakRB, "Ltau_RB", "wRB"},
    {FragmentName::WeakFRB, "Ltau_FRB", "wFRB"},
    {FragmentName::WeakFRBps, "Ltau_FRBps", "wFRBps"},
};

}  // namespace

std::string_view fragment_label(FragmentName name) {
  for (const auto& n : kFragmentNames) {
    if (n.name == name) {
      return n.label;
    }
  }
  return "?";
}

std::string_view fragment_token(FragmentName name) {
  for (const auto& n : kFragmentNames) {
    if (n.name == name) {
      return n.token;
    }
  }
  return "?";
}

std::optional<FragmentName> fragment_from_token(std::string_view token) {
  for (const auto& n : kFragmentNames) {
    if (n.token == token) {
      return n.name;
    }
  }
  return std::nullopt;
}

bool in_fragment(const Formula& f, const FragmentSpec& spec) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<const Formula*> todo{&f};
  while (!todo.empty()) {
    const Formula* g = todo.back();
    todo.pop_back();
    if (!seen.insert(g->id()).second) {
      continue;
    }
    if (!spec.permits(g->connective())) {
      return false;
    }
    switch (g->connective()) {
      case Connective::True:
      case Connective::Init:
        break;
      case Connective::And:
      case Connective::Until:
        todo.push_back(&g->left());
        todo.push_back(&g->right());
        break;
      default:
        todo.push_back(&g->operand());
        break;
    }
  }
  return true;
}

}  // namespace revbisim
