#pragma once

#include <cstddef>

#include "brt/dyadic.hpp"

namespace brt {

/// Exact integer-only bounds on the exponential, used to keep the Chernoff
/// construction free of floating point.

/// ceil(q * ln 2): the least N with e^N > 2^q, decided with certified
/// rational bounds on e (truncated series plus a signed remainder bound).
std::size_t ceil_q_ln2(std::size_t q);

/// A dyadic upper bound on 2 e^{-p/q}, p, q > 0, from the truncated
/// alternating series for e^{-x} cut at an even index past x (so the
/// remainder is negative), rounded up to `precision_bits` fractional bits.
/// `extra_terms` extends the cut beyond the minimum, tightening the bound.
DyadicRational two_exp_neg_upper(const cpp_int& p, const cpp_int& q, std::size_t precision_bits,
                                 std::size_t extra_terms = 8);

/// A dyadic majorant D >= 2 e^{-N/(6 m^2)} certified to satisfy
/// D <= 2^{-target}; sharpens the series until that holds.  Throws
/// std::runtime_error if the true value cannot be below the target.
DyadicRational chernoff_exponential_majorant(std::size_t block_len, std::size_t m,
                                             std::size_t target);

/// Exact binomial coefficient.
cpp_int binomial(std::size_t n, std::size_t k);

}  // namespace brt
