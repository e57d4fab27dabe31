#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revbisim/term.hh"

namespace revbisim {

struct Transition {
  ProcessTerm source;
  Action action;
  ProcessTerm target;
};

/// One-step successors of a reachable term, ordered by action name and then
/// by rendered target. Throws UnreachableTermError.
std::vector<std::pair<Action, ProcessTerm>> step(const ProcessTerm& p);

/// The unique transition entering `p`, as (action, source); nullopt iff `p`
/// is initial. Throws UnreachableTermError.
std::optional<std::pair<Action, ProcessTerm>> backstep(const ProcessTerm& p);

/// Labelled transition system generated from an initial root. The forward
/// graph is a tree: state 0 is the root and every other state has exactly
/// one incoming transition.
class Lts {
 public:
  struct Edge {
    Action action;
    std::size_t state;
  };

  const ProcessTerm& root() const { return states_.front(); }
  std::span<const ProcessTerm> states() const { return states_; }
  std::span<const Transition> transitions() const { return transitions_; }
  std::size_t size() const { return states_.size(); }

  std::optional<std::size_t> index_of(const ProcessTerm& p) const;
  const ProcessTerm& state(std::size_t i) const { return states_.at(i); }

  std::span<const Edge> successors(std::size_t i) const { return out_.at(i); }
  const std::optional<Edge>& predecessor(std::size_t i) const {
    return in_.at(i);
  }

  /// Length of the longest forward path from the root.
  std::size_t height() const { return height_; }

 private:
  friend Lts build_lts(const ProcessTerm& p);

  std::vector<ProcessTerm> states_;
  std::vector<Transition> transitions_;
  std::map<ProcessTerm, std::size_t> index_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::optional<Edge>> in_;
  std::size_t height_ = 0;
};

/// The full LTS rooted at origin(p); `p` is one of its states.
/// Throws UnreachableTermError.
Lts build_lts(const ProcessTerm& p);

/// Weak moves of every state of an LTS. A move labelled tau stands for a
/// possibly empty tau sequence; a move labelled with a visible action a
/// stands for tau* a tau*.
struct SaturatedLts {
  struct WeakEdge {
    Action label;
    std::size_t state;
  };

  Lts base;
  std::vector<std::vector<WeakEdge>> weak_forward;
  std::vector<std::vector<WeakEdge>> weak_backward;
};

SaturatedLts weak_saturate(const Lts& l);

/// Graphviz rendering. The root is drawn as a double circle; `highlight`, if
/// given, is filled. Throws std::invalid_argument if `highlight` is not a
/// state of `l`.
std::string export_dot(const Lts& l,
                       const std::optional<ProcessTerm>& highlight = {});

using StateId = std::uint32_t;

/// Disjoint union of LTSs with dense state ids and interned actions. This is
/// the common substrate of the equivalence checkers and the model checker.
class StateSpace {
 public:
  struct Move {
    std::uint32_t action;
    StateId state;

    friend bool operator==(const Move&, const Move&) = default;
    friend auto operator<=>(const Move&, const Move&) = default;
  };

  StateSpace();

  /// Builds the LTS of every distinct origin among `terms`.
  /// Throws UnreachableTermError.
  static StateSpace of_terms(std::span<const ProcessTerm> terms);

  /// Adds the LTS rooted at origin(p) unless already present; returns the
  /// id of `p`.
  StateId add(const ProcessTerm& p);

  std::size_t size() const { return terms_.size(); }
  std::size_t system_count() const { return systems_.size(); }
  const Lts& system(std::size_t k) const { return systems_.at(k).lts; }
  StateId system_offset(std::size_t k) const { return systems_.at(k).offset; }
  std::size_t system_of(StateId s) const { return system_of_.at(s); }

  std::optional<StateId> find(const ProcessTerm& p) const;
  /// Throws std::out_of_range if `p` is not a state.
  StateId id(const ProcessTerm& p) const;

  const ProcessTerm& term(StateId s) const { return terms_.at(s); }
  const std::string& rendering(StateId s) const { return renderings_.at(s); }
  bool is_initial(StateId s) const { return initial_.at(s) != 0; }

  std::uint32_t tau() const { return tau_; }
  const Action& action(std::uint32_t a) const { return actions_.at(a); }
  std::size_t action_count() const { return actions_.size(); }
  std::optional<std::uint32_t> find_action(const Action& a) const;

  // Moves are sorted by (action, state). Weak moves labelled tau() denote
  // tau* and include the state itself.
  std::span<const Move> out(StateId s) const { return out_[s]; }
  std::span<const Move> in(StateId s) const { return in_[s]; }
  std::span<const Move> weak_out(StateId s) const { return weak_out_[s]; }
  std::span<const Move> weak_in(StateId s) const { return weak_in_[s]; }

  /// Sub-range of `moves` carrying `action`.
  static std::span<const Move> with_action(std::span<const Move> moves,
                                           std::uint32_t action);

 private:
  struct System {
    Lts lts;
    StateId offset;
  };

  std::uint32_t intern(const Action& a);

  std::vector<System> systems_;
  std::vector<ProcessTerm> terms_;
  std::vector<std::string> renderings_;
  std::vector<std::uint8_t> initial_;
  std::vector<std::size_t> system_of_;
  std::map<ProcessTerm, StateId> ids_;
  std::vector<Action> actions_;
  std::map<Action, std::uint32_t> action_ids_;
  std::uint32_t tau_ = 0;
  std::vector<std::vector<Move>> out_, in_, weak_out_, weak_in_;
};

}  // namespace revbisim
