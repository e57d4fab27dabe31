#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "revbisim/term.hh"

namespace revbisim {

struct CorpusParams {
  std::set<Action> alphabet;
  std::size_t max_action_occurrences = 1;
  /// Also emit every state of each initial term's LTS.
  bool include_decorated = false;
};

/// Initial terms with at most `max_action_occurrences` action occurrences,
/// up to associativity and commutativity of '+'. Choice operands are never
/// 0 and sums are left-nested with summands in non-decreasing term order.
/// The result is sorted in term order without duplicates.
/// Throws std::invalid_argument on an empty alphabet or a zero bound.
std::vector<ProcessTerm> corpus_generate(const CorpusParams& params);

}  // namespace revbisim
