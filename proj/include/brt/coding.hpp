#pragma once

#include <vector>

#include "brt/bitstring.hpp"
#include "brt/dyadic.hpp"

namespace brt {

/// Numeric code of a word: the natural number whose binary expansion is
/// 1 followed by the word's symbols.  encode_string("") == 1.
cpp_int encode_string(const BitString& sigma);

/// Inverse of encode_string.  Throws std::invalid_argument on 0 (no code
/// starts with a 0 bit).
BitString decode_string(const cpp_int& code);

/// Code of a nonempty finite set of words: the number whose ternary
/// expansion is 2 c(s1) 2 c(s2) ... 2 c(sk), the binary expansions of the
/// element codes in increasing code order, each preceded by the digit 2.
/// Throws std::invalid_argument on an empty set.
cpp_int encode_set(const std::vector<BitString>& set);

/// Inverse of encode_set.  Throws std::invalid_argument on malformed codes
/// (expansion not led by 2, chunk not a valid string code, codes not
/// strictly increasing).
std::vector<BitString> decode_set(const cpp_int& code);

}  // namespace brt
