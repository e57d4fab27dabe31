#pragma once

#include <cstdint>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "revbisim/formula.hh"
#include "revbisim/lts.hh"

namespace revbisim {

/// Satisfaction inside build_lts(origin(p)). Throws UnreachableTermError.
bool satisfies(const ProcessTerm& p, const Formula& f);

/// Evaluates formulas over every state of a StateSpace. Results are cached
/// per formula id; the space must outlive the checker.
class ModelChecker {
 public:
  explicit ModelChecker(const StateSpace& space) : space_(&space) {}

  /// Set of states satisfying `f`, one bit per state id.
  const boost::dynamic_bitset<>& extension(const Formula& f);

  /// Truth of `f` at one state, computed on demand (no full extension).
  bool holds(StateId s, const Formula& f);

  void clear();
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Key {
    std::uint64_t formula;
    StateId state;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>()(k.formula * 0x9E3779B97F4A7C15ull ^ k.state);
    }
  };

  std::optional<std::uint32_t> action_id(const Formula& f) const;
  bool until_path(StateId s, const Formula& f);

  const StateSpace* space_;
  std::unordered_map<std::uint64_t, boost::dynamic_bitset<>> extensions_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace revbisim
