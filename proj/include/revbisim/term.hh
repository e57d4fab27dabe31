#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revbisim {

/// An action name. The reserved name "tau" is the unobservable action.
class Action {
 public:
  /// Throws std::invalid_argument unless `name` matches [a-z][a-z0-9_]*.
  explicit Action(std::string name);

  static Action tau();
  static bool is_valid_name(std::string_view name);

  const std::string& name() const { return name_; }
  bool is_tau() const { return name_ == "tau"; }

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action& a, const Action& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
};

/// Immutable term of the reversible sequential calculus:
///   P ::= 0 | a.P | a!.P | P + P
/// where a!.P is a prefix whose action has already been executed.
///
/// Terms share structure and compare structurally. The total order is
/// Nil < Prefix < ExecPrefix < Choice, then action name, then operands
/// left to right.
class ProcessTerm {
 public:
  enum class Kind { Nil, Prefix, ExecPrefix, Choice };

  /// The terminated process.
  ProcessTerm();

  static ProcessTerm nil() { return ProcessTerm(); }
  static ProcessTerm prefix(Action action, ProcessTerm continuation);
  static ProcessTerm exec_prefix(Action action, ProcessTerm continuation);
  static ProcessTerm choice(ProcessTerm left, ProcessTerm right);

  Kind kind() const;
  bool is_nil() const { return kind() == Kind::Nil; }

  // Accessors below are only meaningful for the matching kind; they throw
  // std::logic_error otherwise.
  const Action& action() const;
  const ProcessTerm& continuation() const;
  const ProcessTerm& left() const;
  const ProcessTerm& right() const;

  /// Number of action occurrences, decorated or not.
  std::size_t size() const;

  friend bool operator==(const ProcessTerm& a, const ProcessTerm& b);
  friend std::strong_ordering operator<=>(const ProcessTerm& a,
                                          const ProcessTerm& b);

 private:
  struct Node;
  explicit ProcessTerm(std::shared_ptr<const Node> node);

  std::shared_ptr<const Node> node_;
};

/// All actions unexecuted.
bool is_initial(const ProcessTerm& p);

/// All actions along one path executed.
bool is_final(const ProcessTerm& p);

/// Reachable from an initial process; the well-formedness gate for states.
bool is_reachable(const ProcessTerm& p);

/// Innermost subterm responsible for `p` not being reachable, or nullopt
/// when `p` is reachable.
std::optional<ProcessTerm> unreachable_subterm(const ProcessTerm& p);

/// Erases every execution mark. For a reachable `p` this is the unique
/// initial process `p` was reached from.
ProcessTerm origin(const ProcessTerm& p);

/// Action names occurring in `p`, decorated or not.
std::set<Action> alphabet(const ProcessTerm& p);

/// Raised when an operation requiring a reachable term receives one that is
/// not; `offending()` is the subterm blamed by `unreachable_subterm`.
class UnreachableTermError : public std::invalid_argument {
 public:
  UnreachableTermError(const ProcessTerm& term, const ProcessTerm& offending);

  const ProcessTerm& term() const { return term_; }
  const ProcessTerm& offending() const { return offending_; }

 private:
  ProcessTerm term_;
  ProcessTerm offending_;
};

/// Throws UnreachableTermError unless `p` is reachable.
void require_reachable(const ProcessTerm& p);

}  // namespace revbisim
