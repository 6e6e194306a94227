#include "brt/bitstring.hpp"

#include <stdexcept>

namespace brt {

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      out.bits_.push_back(false);
    } else if (c == '1') {
      out.bits_.push_back(true);
    } else {
      throw std::invalid_argument("BitString::parse: invalid character '" + std::string(1, c) +
                                  "'");
    }
  }
  return out;
}

BitString BitString::from_value(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw std::invalid_argument("BitString::from_value: value does not fit width");
  }
  BitString out;
  out.bits_.resize(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits_[width - 1 - i] = ((value >> i) & 1u) != 0;
  }
  return out;
}

BitString BitString::prefix(std::size_t n) const {
  if (n > size()) {
    throw std::out_of_range("BitString::prefix: request exceeds length");
  }
  return BitString(std::vector<bool>(bits_.begin(), bits_.begin() + static_cast<long>(n)));
}

BitString BitString::suffix_from(std::size_t from) const {
  if (from > size()) {
    throw std::out_of_range("BitString::suffix_from: request exceeds length");
  }
  return BitString(std::vector<bool>(bits_.begin() + static_cast<long>(from), bits_.end()));
}

bool BitString::is_prefix_of(const BitString& other) const {
  if (size() > other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i] != other.bits_[i]) return false;
  }
  return true;
}

BitString BitString::operator+(const BitString& rhs) const {
  BitString out = *this;
  out += rhs;
  return out;
}

BitString& BitString::operator+=(const BitString& rhs) {
  bits_.insert(bits_.end(), rhs.bits_.begin(), rhs.bits_.end());
  return *this;
}

bool BitString::next_same_length() {
  for (std::size_t i = size(); i-- > 0;) {
    if (!bits_[i]) {
      bits_[i] = true;
      return true;
    }
    bits_[i] = false;
  }
  return false;
}

std::uint64_t BitString::value() const {
  if (size() > 64) {
    throw std::out_of_range("BitString::value: wider than 64 bits");
  }
  std::uint64_t v = 0;
  for (bool b : bits_) v = (v << 1) | (b ? 1u : 0u);
  return v;
}

std::string BitString::str() const {
  std::string out;
  out.reserve(size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

int BitString::cmp_length_lex(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.bits_ < b.bits_) return -1;
  if (b.bits_ < a.bits_) return 1;
  return 0;
}

std::size_t BitString::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (bool b : bits_) {
    h ^= (b ? 0x9eu : 0x31u);
    h *= 1099511628211ull;
  }
  h ^= size();
  return h;
}

}  // namespace brt
