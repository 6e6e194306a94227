#pragma once

#include <functional>
#include <memory>
#include <string>

#include "brt/bitstring.hpp"

namespace brt {

/// A (prefix of a) point of Cantor space.  Literal prefixes have a hard
/// length bound; generated ones extend on demand through a bit rule and
/// memoize what they have produced, which makes repeated queries at
/// growing lengths automatically extension-consistent.
class SequencePrefix {
public:
  SequencePrefix() : SequencePrefix(literal(BitString())) {}

  static SequencePrefix literal(BitString bits);
  static SequencePrefix generated(std::string id, std::function<int(std::size_t)> bit_rule);

  /// Convenience rules.
  static SequencePrefix constant(int bit);
  static SequencePrefix periodic(const BitString& pattern);
  /// bits of `head` first, then all zeros.
  static SequencePrefix zero_padded(BitString head);

  bool is_literal() const { return state_->rule == nullptr; }
  const std::string& id() const { return state_->id; }

  /// Length available without extension (content produced so far, or the
  /// literal length).
  std::size_t known_length() const { return state_->bits.size(); }

  /// First n bits.  Throws PrefixTooShort for a literal prefix shorter
  /// than n; extends a generated prefix as needed.
  BitString prefix(std::size_t n) const;

  /// Single bit access under the same rules as prefix().
  int bit(std::size_t i) const;

private:
  struct State {
    std::string id;
    BitString bits;
    std::function<int(std::size_t)> rule;  // null for literals
  };
  explicit SequencePrefix(std::shared_ptr<State> s) : state_(std::move(s)) {}
  void ensure(std::size_t n) const;

  std::shared_ptr<State> state_;
};

/// Thrown when a literal prefix is too short for a requested operation.
class PrefixTooShort : public std::runtime_error {
public:
  PrefixTooShort(std::size_t have, std::size_t need)
      : std::runtime_error("prefix too short: have " + std::to_string(have) + " bits, need " +
                           std::to_string(need)) {}
};

}  // namespace brt
