#include "brt/coding.hpp"

#include <algorithm>
#include <stdexcept>

namespace brt {

cpp_int encode_string(const BitString& sigma) {
  cpp_int code = 1;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    code <<= 1;
    code |= sigma.bit(i);
  }
  return code;
}

BitString decode_string(const cpp_int& code) {
  if (code <= 0) {
    throw std::invalid_argument("decode_string: code must be positive");
  }
  // Collect binary digits, drop the leading 1.
  std::vector<int> digits;
  cpp_int n = code;
  while (n > 0) {
    digits.push_back(static_cast<int>(n & 1));
    n >>= 1;
  }
  BitString out;
  for (std::size_t i = digits.size() - 1; i-- > 0;) {
    out.push_back(digits[i]);
  }
  return out;
}

namespace {

std::vector<int> binary_digits_msb_first(const cpp_int& n) {
  std::vector<int> digits;
  cpp_int v = n;
  while (v > 0) {
    digits.push_back(static_cast<int>(v & 1));
    v >>= 1;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace

cpp_int encode_set(const std::vector<BitString>& set) {
  if (set.empty()) {
    throw std::invalid_argument("encode_set: the code is defined for nonempty sets only");
  }
  std::vector<cpp_int> codes;
  codes.reserve(set.size());
  for (const auto& s : set) codes.push_back(encode_string(s));
  std::sort(codes.begin(), codes.end());
  for (std::size_t i = 1; i < codes.size(); ++i) {
    if (codes[i] == codes[i - 1]) {
      throw std::invalid_argument("encode_set: duplicate element");
    }
  }
  cpp_int out = 0;
  for (const auto& c : codes) {
    out = out * 3 + 2;
    for (int d : binary_digits_msb_first(c)) {
      out = out * 3 + d;
    }
  }
  return out;
}

std::vector<BitString> decode_set(const cpp_int& code) {
  if (code <= 0) {
    throw std::invalid_argument("decode_set: code must be positive");
  }
  std::vector<int> ternary;
  cpp_int n = code;
  while (n > 0) {
    ternary.push_back(static_cast<int>(n % 3));
    n /= 3;
  }
  std::reverse(ternary.begin(), ternary.end());
  if (ternary.front() != 2) {
    throw std::invalid_argument("decode_set: expansion must start with digit 2");
  }
  std::vector<cpp_int> codes;
  cpp_int current = 0;
  bool have_digit = false;
  for (std::size_t i = 1; i <= ternary.size(); ++i) {
    if (i == ternary.size() || ternary[i] == 2) {
      if (!have_digit) {
        throw std::invalid_argument("decode_set: empty chunk between separators");
      }
      codes.push_back(current);
      current = 0;
      have_digit = false;
    } else {
      if (!have_digit && ternary[i] == 0) {
        throw std::invalid_argument("decode_set: chunk has a leading zero digit");
      }
      current = current * 2 + ternary[i];
      have_digit = true;
    }
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i > 0 && codes[i] <= codes[i - 1]) {
      throw std::invalid_argument("decode_set: element codes must be strictly increasing");
    }
  }
  std::vector<BitString> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back(decode_string(c));
  return out;
}

}  // namespace brt
