#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revbisim/formula.hh"
#include "revbisim/lts.hh"
#include "revbisim/term.hh"

namespace revbisim {

enum class EquivKind { FB, FBps, RB, FRB, wFB, wFBps, wRB, wFRB, wFRBps, BB };

inline constexpr std::array<EquivKind, 10> all_kinds{
    EquivKind::FB,  EquivKind::FBps, EquivKind::RB,     EquivKind::FRB,
    EquivKind::wFB, EquivKind::wFBps, EquivKind::wRB,   EquivKind::wFRB,
    EquivKind::wFRBps, EquivKind::BB};

/// The kinds with a logical characterization (all but BB).
inline constexpr std::array<EquivKind, 9> logical_kinds{
    EquivKind::FB,  EquivKind::FBps, EquivKind::RB,   EquivKind::FRB,
    EquivKind::wFB, EquivKind::wFBps, EquivKind::wRB, EquivKind::wFRB,
    EquivKind::wFRBps};

std::string_view to_string(EquivKind kind);
std::optional<EquivKind> kind_from_string(std::string_view token);

struct KindTraits {
  bool forward;
  bool backward;
  bool weak;
  bool past_sensitive;
};

KindTraits traits(EquivKind kind);

/// Matching fragment; nullopt for BB.
std::optional<FragmentName> fragment_of(EquivKind kind);

/// Greatest relation of one kind over all states of a StateSpace, together
/// with the round in which each removed pair left the relation. Round 0 is
/// reserved for the initiality condition of the past-sensitive kinds; a pair
/// removed in round k >= 1 has a challenge none of whose responses was still
/// related after round k-1.
class RelationTable {
 public:
  static constexpr std::uint16_t kRelated = 0xFFFF;

  explicit RelationTable(std::size_t n);

  std::size_t size() const { return n_; }
  bool related(StateId x, StateId y) const {
    return cells_[std::size_t(x) * n_ + y] == kRelated;
  }
  /// kRelated for related pairs.
  std::uint16_t round(StateId x, StateId y) const {
    return cells_[std::size_t(x) * n_ + y];
  }
  /// Number of removal rounds performed, including round 0.
  std::uint16_t rounds() const { return rounds_; }

 private:
  friend RelationTable greatest_relation(EquivKind, const StateSpace&);

  void remove(StateId x, StateId y, std::uint16_t r) {
    cells_[std::size_t(x) * n_ + y] = r;
    cells_[std::size_t(y) * n_ + x] = r;
  }

  std::size_t n_;
  std::vector<std::uint16_t> cells_;
  std::uint16_t rounds_ = 0;
};

/// Iterated removal of violating pairs from the full relation, transcribing
/// the clauses of `kind`. Pairs across different LTSs of the space are
/// included.
RelationTable greatest_relation(EquivKind kind, const StateSpace& space);

/// Does `pairs` (closed under symmetry by the caller or not) satisfy the
/// clauses of `kind`? The relation is symmetrized before checking.
bool is_bisimulation(EquivKind kind, const StateSpace& space,
                     const std::vector<std::pair<StateId, StateId>>& pairs);

using WitnessRelation = std::vector<std::pair<ProcessTerm, ProcessTerm>>;

/// Greatest relation of `kind` over states(l1) u states(l2), both
/// orientations, ordered by rendering.
WitnessRelation relation_fixpoint(EquivKind kind, const Lts& l1,
                                  const Lts& l2);

/// Block number per state; states share a block iff they are equivalent.
/// Throws std::invalid_argument for BB.
std::vector<std::size_t> refine_partition(EquivKind kind,
                                          const StateSpace& space);

/// Blocks over states(l1) u states(l2), each ordered by rendering, blocks
/// ordered by their first member.
std::vector<std::vector<ProcessTerm>> refine_partition(EquivKind kind,
                                                       const Lts& l1,
                                                       const Lts& l2);

struct EquivalenceReport {
  EquivKind kind;
  ProcessTerm left;
  ProcessTerm right;
  bool equivalent = false;
  /// Related pairs (x, y) with x a state of left's LTS and y of right's.
  WitnessRelation witness;
  std::optional<Formula> distinguishing;

  std::string to_json() const;
};

/// Throws UnreachableTermError.
EquivalenceReport bisimilar(EquivKind kind, const ProcessTerm& p1,
                            const ProcessTerm& p2);

/// Labels on the backward path from `p` to origin(p), most recent first;
/// `weak` erases tau. Throws UnreachableTermError.
std::vector<Action> backward_trace(const ProcessTerm& p, bool weak);

/// Tau chains s0 -> ... -> sn (n >= 1) with s0 and sn related by `table`
/// but some intermediate state not related to s0. For wFRBps only chains
/// starting at a non-initial state are considered.
std::vector<std::vector<StateId>> stuttering_violations(
    EquivKind kind, const StateSpace& space, const RelationTable& table,
    std::size_t system);

/// Same, on a single LTS, for wFRB.
std::vector<std::vector<ProcessTerm>> stuttering_violations(const Lts& l);

struct CrossViolation {
  StateId first1, second1, first2, second2;
};

/// Quadruples with first1 =tau*=> second1 in system k1, first2 =tau*=>
/// second2 in system k2, first1 ~ second2 and second1 ~ first2 but not
/// second1 ~ second2. Empty when the roots are not related.
std::vector<CrossViolation> cross_violations(const StateSpace& space,
                                             const RelationTable& table,
                                             std::size_t k1, std::size_t k2);

/// Same on two LTSs, for wFRB; each entry is (P1', P1'', P2', P2'').
std::vector<std::array<ProcessTerm, 4>> cross_violations(const Lts& l1,
                                                         const Lts& l2);

}  // namespace revbisim
