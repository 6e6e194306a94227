#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace brt {

/// A finite word over {0,1}.  The empty word is a valid value.
/// Comparison is dictionary order (a proper prefix sorts before its
/// extensions); same-length comparison is therefore plain lexicographic.
class BitString {
public:
  BitString() = default;

  static BitString zeros(std::size_t n) { return BitString(std::vector<bool>(n, false)); }
  static BitString ones(std::size_t n) { return BitString(std::vector<bool>(n, true)); }

  /// Parses an ASCII 0/1 word; "" is the empty string.
  static BitString parse(std::string_view text);

  /// The string of width `width` whose value as a binary numeral is `value`
  /// (MSB first), i.e. the string of lexicographic rank `value` at that width.
  static BitString from_value(std::uint64_t value, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(std::size_t i) const { return bits_[i] ? 1 : 0; }
  void set_bit(std::size_t i, int b) { bits_[i] = (b != 0); }

  void push_back(int b) { bits_.push_back(b != 0); }
  void pop_back() { bits_.pop_back(); }

  /// First n symbols; n must not exceed size().
  BitString prefix(std::size_t n) const;
  /// Symbols [from, size()).
  BitString suffix_from(std::size_t from) const;

  bool is_prefix_of(const BitString& other) const;

  /// Two strings are compatible iff one is a prefix of the other.
  bool compatible_with(const BitString& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  BitString operator+(const BitString& rhs) const;
  BitString& operator+=(const BitString& rhs);

  /// Lexicographic successor at fixed length.  Returns false on wrap-around
  /// (input was all ones; value becomes all zeros).
  bool next_same_length();

  /// Value of the word read as a binary numeral (MSB first); width must be
  /// at most 64 for this to be representable.
  std::uint64_t value() const;

  std::string str() const;

  bool operator==(const BitString& rhs) const { return bits_ == rhs.bits_; }
  bool operator!=(const BitString& rhs) const { return bits_ != rhs.bits_; }
  bool operator<(const BitString& rhs) const { return bits_ < rhs.bits_; }
  bool operator>(const BitString& rhs) const { return rhs < *this; }
  bool operator<=(const BitString& rhs) const { return !(rhs < *this); }
  bool operator>=(const BitString& rhs) const { return !(*this < rhs); }

  /// Length-then-lexicographic comparison (the order induced by the
  /// numeric code c(sigma)).  Negative, zero, positive like strcmp.
  static int cmp_length_lex(const BitString& a, const BitString& b);

  std::size_t hash() const;

private:
  explicit BitString(std::vector<bool> bits) : bits_(std::move(bits)) {}
  std::vector<bool> bits_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const { return s.hash(); }
};

}  // namespace brt
