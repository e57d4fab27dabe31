#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "revbisim/equiv.hh"
#include "revbisim/formula.hh"
#include "revbisim/logic.hh"
#include "revbisim/lts.hh"

namespace revbisim {

/// Builds distinguishing formulas from the removal rounds of a relation
/// table. Results are memoized per ordered pair; `space` and `table` must
/// outlive the object.
class Distinguisher {
 public:
  /// Throws std::invalid_argument for BB.
  Distinguisher(EquivKind kind, const StateSpace& space,
                const RelationTable& table);

  /// nullopt iff the pair is related. Otherwise a formula of the kind's
  /// fragment true at exactly one of x, y; true at x whenever the fragment
  /// has negation.
  std::optional<Formula> operator()(StateId x, StateId y);

 private:
  static constexpr std::uint8_t kCandidates = 3;

  Formula separate(StateId x, StateId y);
  /// Up to kCandidates formulas true at x and false at y, best first.
  std::span<const Formula> candidates(StateId x, StateId y);
  Formula trace_formula(StateId x, StateId y) const;
  Formula modality(bool backward, std::uint32_t action, Formula body) const;
  Formula conjoin(std::vector<Formula> parts) const;
  std::vector<Formula> cover(std::vector<Formula> parts,
                             std::span<const StateSpace::Move> responses);

  EquivKind kind_;
  KindTraits traits_;
  const StateSpace* space_;
  const RelationTable* table_;
  std::vector<std::int32_t> memo_;
  std::vector<std::uint8_t> counts_;
  std::vector<Formula> pool_;
  ModelChecker checker_;
};

/// Throws UnreachableTermError; std::invalid_argument for BB.
std::optional<Formula> distinguish(EquivKind kind, const ProcessTerm& p1,
                                   const ProcessTerm& p2);

/// Every formula of the fragment over `alphabet` with depth <= max_depth, up
/// to canonicalization: conjunctions are binary with operands strictly
/// increasing in formula order and never tt, and no double negation.
/// Ordered by depth, then formula order. Strong modalities range over the
/// whole alphabet, weak visible ones over its visible part.
std::vector<Formula> enumerate_formulas(const FragmentSpec& spec,
                                        const std::set<Action>& alphabet,
                                        std::size_t max_depth);

struct Mismatch {
  ProcessTerm left;
  ProcessTerm right;
  /// "equivalent-but-split", "no-formula", "not-in-fragment",
  /// "does-not-split", "depth-bound" or "not-an-equivalence".
  std::string direction;
  std::string detail;
};

struct CharacterizationReport {
  EquivKind kind;
  std::string corpus_id;
  std::size_t max_depth = 0;
  std::size_t formulas_enumerated = 0;
  std::size_t pairs_checked = 0;
  std::size_t agreements = 0;
  std::size_t equivalent_pairs = 0;
  std::size_t largest_formula_depth = 0;
  std::vector<Mismatch> mismatches;

  std::string to_json() const;
};

/// Checks, for every unordered pair of distinct corpus terms, that
/// equivalent terms agree on all enumerated formulas and that inequivalent
/// ones are split by the distinguishing formula, which must lie in the
/// fragment and respect depth <= 2(h1 + h2) + 3 where hi are the heights of
/// the two LTSs. Throws UnreachableTermError; std::invalid_argument for BB.
CharacterizationReport verify_characterization(
    EquivKind kind, const std::vector<ProcessTerm>& corpus,
    std::size_t max_depth, std::string corpus_id = "corpus");

}  // namespace revbisim
