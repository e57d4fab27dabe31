#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "revbisim/term.hh"

namespace revbisim {

/// Connectives of the modal logic. The order of the enumerators is the
/// canonical formula order.
enum class Connective : std::uint8_t {
  True,
  Init,
  Not,
  And,
  Diamond,             // <a>phi
  BackDiamond,         // <a!>phi
  WeakTauDiamond,      // <<tau>>phi
  WeakDiamond,         // <<a>>phi, a visible
  WeakBackTauDiamond,  // <<tau!>>phi
  WeakBackDiamond,     // <<a!>>phi, a visible
  Until,               // until(phi1, a, phi2)
};

std::string_view connective_name(Connective c);

/// Immutable formula. Subformulas are shared, so a formula is a DAG; every
/// node carries a process-wide unique id usable as a memo key.
class Formula {
 public:
  /// `tt`
  Formula();

  static Formula truth();
  static Formula init();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula left, Formula right);
  static Formula diamond(Action action, Formula operand);
  static Formula back_diamond(Action action, Formula operand);
  static Formula weak_tau_diamond(Formula operand);
  /// Throws std::invalid_argument if `action` is tau.
  static Formula weak_diamond(Action action, Formula operand);
  static Formula weak_back_tau_diamond(Formula operand);
  /// Throws std::invalid_argument if `action` is tau.
  static Formula weak_back_diamond(Action action, Formula operand);
  static Formula until(Formula hold, Action action, Formula reach);

  Connective connective() const;
  /// Action of a strong/weak visible modality or of until.
  const Action& action() const;
  /// Operand of a negation or modality.
  const Formula& operand() const;
  /// Operands of a conjunction; for until, the invariant and the goal.
  const Formula& left() const;
  const Formula& right() const;

  std::size_t depth() const;
  std::uint64_t id() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  static Formula make(Connective c, std::optional<Action> action,
                      std::vector<Formula> operands);

  std::shared_ptr<const Node> node_;
};

/// Nesting depth: 1 for tt and init, 1 + the operands' maximum otherwise.
std::size_t depth(const Formula& f);

/// Rows of the fragment table: one sublogic per bisimilarity.
enum class FragmentName {
  FB,
  FBps,
  RB,
  FRB,
  WeakFB,
  WeakFBps,
  WeakRB,
  WeakFRB,
  WeakFRBps,
};

/// The connectives permitted in one fragment. `allow_until` is an extension
/// outside the nine table rows and is false for all of them.
struct FragmentSpec {
  FragmentName name;
  std::set<Connective> allowed;
  bool allow_until = false;

  bool permits(Connective c) const;
};

FragmentSpec fragment(FragmentName name);

/// Long name, e.g. "L_FB" or "Ltau_FRBps".
std::string_view fragment_label(FragmentName name);

/// CLI token, e.g. "FB" or "wFRBps".
std::string_view fragment_token(FragmentName name);
std::optional<FragmentName> fragment_from_token(std::string_view token);

bool in_fragment(const Formula& f, const FragmentSpec& spec);

}  // namespace revbisim
