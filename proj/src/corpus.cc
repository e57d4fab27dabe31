#include "revbisim/corpus.hh"

#include <algorithm>
#include <stdexcept>

#include "revbisim/lts.hh"

namespace revbisim {

namespace {

// Multisets of summands (indices non-decreasing into `pool`) whose sizes
// add up to exactly `budget`.
void sums(const std::vector<std::pair<ProcessTerm, std::size_t>>& pool,
          std::size_t start, std::size_t budget,
          std::optional<ProcessTerm> acc, std::vector<ProcessTerm>& out) {
  if (budget == 0) {
    out.push_back(*acc);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    const auto& [summand, size] = pool[i];
    if (size > budget) {
      continue;
    }
    ProcessTerm next = acc ? ProcessTerm::choice(*acc, summand) : summand;
    sums(pool, i, budget - size, next, out);
  }
}

}  // namespace

std::vector<ProcessTerm> corpus_generate(const CorpusParams& params) {
  if (params.alphabet.empty()) {
    throw std::invalid_argument("corpus alphabet is empty");
  }
  if (params.max_action_occurrences == 0) {
    throw std::invalid_argument("corpus bound must be positive");
  }
  const std::size_t max = params.max_action_occurrences;
  // by_size[n]: initial terms with exactly n actions
  std::vector<std::vector<ProcessTerm>> by_size{{ProcessTerm::nil()}};
  std::vector<std::pair<ProcessTerm, std::size_t>> summands;
  for (std::size_t n = 1; n <= max; ++n) {
    for (const auto& a : params.alphabet) {
      for (const auto& cont : by_size[n - 1]) {
        summands.emplace_back(ProcessTerm::prefix(a, cont), n);
      }
    }
    std::sort(summands.begin(), summands.end());
    std::vector<ProcessTerm> exact;
    sums(summands, 0, n, std::nullopt, exact);
    std::sort(exact.begin(), exact.end());
    exact.erase(std::unique(exact.begin(), exact.end()), exact.end());
    by_size.push_back(std::move(exact));
  }

  std::vector<ProcessTerm> out;
  for (const auto& layer : by_size) {
    for (const auto& p : layer) {
      if (params.include_decorated) {
        Lts l = build_lts(p);
        out.insert(out.end(), l.states().begin(), l.states().end());
      } else {
        out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace revbisim
