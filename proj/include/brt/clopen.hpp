#pragma once

#include <cstddef>
#include <vector>

#include "brt/bitstring.hpp"
#include "brt/dyadic.hpp"

namespace brt {

/// A clopen subset of Cantor space given by a finite set of generator words,
/// all of one uniform length (the level).  Generators are kept sorted
/// lexicographically and deduplicated, so serialized output is deterministic.
class ClopenSet {
public:
  /// Empty set at the given level.
  explicit ClopenSet(std::size_t level = 0) : level_(level) {}

  /// Validates lengths, sorts, rejects duplicates.
  ClopenSet(std::size_t level, std::vector<BitString> generators);

  /// The whole space as a level-`level` set.  Materializes 2^level words;
  /// only meant for small levels.
  static ClopenSet full(std::size_t level);

  /// Accepts a prefix-free family of words of mixed lengths and refines it
  /// to the maximum length present.  The empty family yields the empty set
  /// at level 0.
  static ClopenSet from_mixed(const std::vector<BitString>& prefix_free);

  std::size_t level() const { return level_; }
  const std::vector<BitString>& generators() const { return generators_; }
  std::size_t count() const { return generators_.size(); }
  bool empty_set() const { return generators_.empty(); }

  /// |generators| * 2^{-level}, exact.
  DyadicRational measure() const;

  /// Is the generator word `g` (of length exactly level) in the family?
  bool member(const BitString& g) const;

  /// Does the real starting with `x` land in the set?  Requires
  /// x.size() >= level.
  bool contains_prefix(const BitString& x) const;

  /// Same set re-expressed at a deeper level (splits every generator).
  ClopenSet refined(std::size_t new_level) const;

  /// Intersection as clopen sets; result level is max(a.level, b.level).
  static ClopenSet intersect(const ClopenSet& a, const ClopenSet& b);

  /// Union; result level is max(a.level, b.level).
  static ClopenSet unite(const ClopenSet& a, const ClopenSet& b);

  /// Exact measure of (this ∩ [tau]); tau may be shorter or longer than the
  /// level.
  DyadicRational measure_within(const BitString& tau) const;

  /// The lexicographically first `how_many` level-length words not in the
  /// family.  Throws if fewer than that many are absent.
  std::vector<BitString> absent_lex_first(std::size_t how_many) const;

  bool operator==(const ClopenSet& rhs) const {
    return level_ == rhs.level_ && generators_ == rhs.generators_;
  }

private:
  std::size_t level_;
  std::vector<BitString> generators_;
};

}  // namespace brt
