#pragma once

#include <random>
#include <vector>

#include "revbisim/formula.hh"

namespace revbisim::testing {

// Random formula inside `spec`; strong modalities draw from all of
// `actions`, weak visible ones skip tau.
inline Formula random_formula(std::mt19937& rng, const FragmentSpec& spec,
                              const std::vector<Action>& actions, int budget) {
  std::vector<Connective> leaves, inner;
  for (Connective c : spec.allowed) {
    if (c == Connective::True || c == Connective::Init) {
      leaves.push_back(c);
    } else {
      inner.push_back(c);
    }
  }
  std::vector<Action> visible;
  for (const auto& a : actions) {
    if (!a.is_tau()) {
      visible.push_back(a);
    }
  }
  auto pick = [&](const auto& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  bool leaf = budget <= 1 || inner.empty() ||
              std::bernoulli_distribution(0.25)(rng);
  if (leaf) {
    return pick(leaves) == Connective::Init ? Formula::init() : Formula::truth();
  }
  auto sub = [&] { return random_formula(rng, spec, actions, budget - 1); };
  switch (pick(inner)) {
    case Connective::Not:
      return Formula::negation(sub());
    case Connective::And: {
      Formula l = sub();
      return Formula::conjunction(l, sub());
    }
    case Connective::Diamond:
      return Formula::diamond(pick(actions), sub());
    case Connective::BackDiamond:
      return Formula::back_diamond(pick(actions), sub());
    case Connective::WeakTauDiamond:
      return Formula::weak_tau_diamond(sub());
    case Connective::WeakBackTauDiamond:
      return Formula::weak_back_tau_diamond(sub());
    case Connective::WeakDiamond:
      return Formula::weak_diamond(pick(visible), sub());
    case Connective::WeakBackDiamond:
      return Formula::weak_back_diamond(pick(visible), sub());
    default:
      return Formula::truth();
  }
}

}  // namespace revbisim::testing
