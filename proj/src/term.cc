#include "revbisim/term.hh"

#include "revbisim/parser.hh"

namespace revbisim {

Action::Action(std::string name) : name_(std::move(name)) {
  if (!is_valid_name(name_)) {
    throw std::invalid_argument("invalid action name '" + name_ + "'");
  }
}

Action Action::tau() { return Action("tau"); }

bool Action::is_valid_name(std::string_view name) {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') {
    return false;
  }
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) {
      return false;
    }
  }
  return true;
}

struct ProcessTerm::Node {
  Kind kind = Kind::Nil;
  std::optional<Action> action;
  ProcessTerm first;
  ProcessTerm second;
  std::size_t size = 0;

  Node() = default;
  Node(Kind k, std::optional<Action> a, ProcessTerm f, ProcessTerm s,
       std::size_t n)
      : kind(k), action(std::move(a)), first(std::move(f)),
        second(std::move(s)), size(n) {}
};

ProcessTerm::ProcessTerm() = default;

ProcessTerm::ProcessTerm(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

ProcessTerm ProcessTerm::prefix(Action action, ProcessTerm continuation) {
  std::size_t n = continuation.size() + 1;
  return ProcessTerm(std::make_shared<const Node>(
      Kind::Prefix, std::move(action), std::move(continuation), ProcessTerm(),
      n));
}

ProcessTerm ProcessTerm::exec_prefix(Action action, ProcessTerm continuation) {
  std::size_t n = continuation.size() + 1;
  return ProcessTerm(std::make_shared<const Node>(
      Kind::ExecPrefix, std::move(action), std::move(continuation),
      ProcessTerm(), n));
}

ProcessTerm ProcessTerm::choice(ProcessTerm left, ProcessTerm right) {
  std::size_t n = left.size() + right.size();
  return ProcessTerm(std::make_shared<const Node>(
      Kind::Choice, std::nullopt, std::move(left), std::move(right), n));
}

ProcessTerm::Kind ProcessTerm::kind() const {
  return node_ ? node_->kind : Kind::Nil;
}

const Action& ProcessTerm::action() const {
  if (!node_ || !node_->action) {
    throw std::logic_error("term has no action");
  }
  return *node_->action;
}

const ProcessTerm& ProcessTerm::continuation() const {
  if (kind() != Kind::Prefix && kind() != Kind::ExecPrefix) {
    throw std::logic_error("term is not a prefix");
  }
  return node_->first;
}

const ProcessTerm& ProcessTerm::left() const {
  if (kind() != Kind::Choice) {
    throw std::logic_error("term is not a choice");
  }
  return node_->first;
}

const ProcessTerm& ProcessTerm::right() const {
  if (kind() != Kind::Choice) {
    throw std::logic_error("term is not a choice");
  }
  return node_->second;
}

std::size_t ProcessTerm::size() const { return node_ ? node_->size : 0; }

bool operator==(const ProcessTerm& a, const ProcessTerm& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ProcessTerm& a, const ProcessTerm& b) {
  if (a.node_ == b.node_) {
    return std::strong_ordering::equal;
  }
  if (auto c = a.kind() <=> b.kind(); c != 0) {
    return c;
  }
  switch (a.kind()) {
    case ProcessTerm::Kind::Nil:
      return std::strong_ordering::equal;
    case ProcessTerm::Kind::Prefix:
    case ProcessTerm::Kind::ExecPrefix:
      if (auto c = a.action() <=> b.action(); c != 0) {
        return c;
      }
      return a.continuation() <=> b.continuation();
    case ProcessTerm::Kind::Choice:
      if (auto c = a.left() <=> b.left(); c != 0) {
        return c;
      }
      return a.right() <=> b.right();
  }
  return std::strong_ordering::equal;
}

bool is_initial(const ProcessTerm& p) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      return true;
    case ProcessTerm::Kind::Prefix:
      return is_initial(p.continuation());
    case ProcessTerm::Kind::ExecPrefix:
      return false;
    case ProcessTerm::Kind::Choice:
      return is_initial(p.left()) && is_initial(p.right());
  }
  return false;
}

bool is_final(const ProcessTerm& p) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      return true;
    case ProcessTerm::Kind::Prefix:
      return false;
    case ProcessTerm::Kind::ExecPrefix:
      return is_final(p.continuation());
    case ProcessTerm::Kind::Choice:
      return (is_final(p.left()) && is_initial(p.right())) ||
             (is_initial(p.left()) && is_final(p.right()));
  }
  return false;
}

bool is_reachable(const ProcessTerm& p) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      return true;
    case ProcessTerm::Kind::Prefix:
      return is_initial(p.continuation());
    case ProcessTerm::Kind::ExecPrefix:
      return is_reachable(p.continuation());
    case ProcessTerm::Kind::Choice:
      return (is_reachable(p.left()) && is_initial(p.right())) ||
             (is_initial(p.left()) && is_reachable(p.right()));
  }
  return false;
}

std::optional<ProcessTerm> unreachable_subterm(const ProcessTerm& p) {
  if (is_reachable(p)) {
    return std::nullopt;
  }
  switch (p.kind()) {
    case ProcessTerm::Kind::ExecPrefix:
      return unreachable_subterm(p.continuation());
    case ProcessTerm::Kind::Choice:
      if (is_initial(p.right())) {
        return unreachable_subterm(p.left());
      }
      if (is_initial(p.left())) {
        return unreachable_subterm(p.right());
      }
      return p;
    default:
      return p;
  }
}

ProcessTerm origin(const ProcessTerm& p) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      return p;
    case ProcessTerm::Kind::Prefix:
    case ProcessTerm::Kind::ExecPrefix:
      return ProcessTerm::prefix(p.action(), origin(p.continuation()));
    case ProcessTerm::Kind::Choice:
      return ProcessTerm::choice(origin(p.left()), origin(p.right()));
  }
  return p;
}

namespace {

void collect_actions(const ProcessTerm& p, std::set<Action>& out) {
  switch (p.kind()) {
    case ProcessTerm::Kind::Nil:
      return;
    case ProcessTerm::Kind::Prefix:
    case ProcessTerm::Kind::ExecPrefix:
      out.insert(p.action());
      collect_actions(p.continuation(), out);
      return;
    case ProcessTerm::Kind::Choice:
      collect_actions(p.left(), out);
      collect_actions(p.right(), out);
      return;
  }
}

}  // namespace

std::set<Action> alphabet(const ProcessTerm& p) {
  std::set<Action> out;
  collect_actions(p, out);
  return out;
}

UnreachableTermError::UnreachableTermError(const ProcessTerm& term,
                                           const ProcessTerm& offending)
    : std::invalid_argument("term '" + render_term(term) +
                            "' is not reachable (offending subterm '" +
                            render_term(offending) + "')"),
      term_(term),
      offending_(offending) {}

void require_reachable(const ProcessTerm& p) {
  if (auto bad = unreachable_subterm(p)) {
    throw UnreachableTermError(p, *bad);
  }
}

}  // namespace revbisim
