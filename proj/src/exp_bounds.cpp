#include "brt/exp_bounds.hpp"

#include <stdexcept>

namespace brt {

namespace {

// Compares e^N against 2^q using series bounds with J terms.
// Returns -1 / +1 when decided, 0 when the bounds straddle 2^q.
int compare_exp_pow2(std::size_t n_exp, std::size_t q, std::size_t terms) {
  // lower = A/J!, upper = (J*A + 1)/(J*J!) with A = sum_{j<=J} J!/j!.
  cpp_int factorial = 1;
  for (std::size_t j = 2; j <= terms; ++j) factorial *= j;
  cpp_int a = 0;
  cpp_int term = factorial;  // J!/0!
  a += term;
  for (std::size_t j = 1; j <= terms; ++j) {
    term /= j;  // J!/j!
    a += term;
  }
  cpp_int lower_num = 1, lower_den = 1, upper_num = 1, upper_den = 1;
  for (std::size_t i = 0; i < n_exp; ++i) {
    lower_num *= a;
    lower_den *= factorial;
    upper_num *= (a * terms + 1);
    upper_den *= (factorial * terms);
  }
  cpp_int rhs = cpp_int(1) << q;
  if (lower_num > rhs * lower_den) return 1;   // e^N > 2^q certified
  if (upper_num < rhs * upper_den) return -1;  // e^N < 2^q certified
  return 0;
}

int compare_exp_pow2_adaptive(std::size_t n_exp, std::size_t q) {
  for (std::size_t terms = 12; terms <= 400; terms *= 2) {
    int c = compare_exp_pow2(n_exp, q, terms);
    if (c != 0) return c;
  }
  throw std::runtime_error("compare_exp_pow2: bounds failed to separate (is e^N = 2^q?)");
}

}  // namespace

std::size_t ceil_q_ln2(std::size_t q) {
  if (q == 0) return 0;
  // q*ln2 < q, so the answer lies in [1, q].
  std::size_t lo = 1, hi = q;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (compare_exp_pow2_adaptive(mid, q) > 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

DyadicRational two_exp_neg_upper(const cpp_int& p, const cpp_int& q, std::size_t precision_bits,
                                 std::size_t extra_terms) {
  if (p <= 0 || q <= 0) {
    throw std::invalid_argument("two_exp_neg_upper: exponent must be positive");
  }
  // Cut index: even K with K + 1 > x = p/q, so term magnitudes decrease
  // past K and the truncation error is negative.
  std::size_t K = 2;
  while (cpp_int(K + 1) * q <= p) K += 2;
  K += extra_terms + (extra_terms % 2);

  // S_K = sum_{k<=K} (-x)^k / k! = A / (q^K * K!).
  cpp_int k_factorial = 1;
  for (std::size_t j = 2; j <= K; ++j) k_factorial *= j;
  cpp_int a = 0;
  cpp_int p_pow = 1;                 // p^k
  cpp_int q_pow = 1;                 // q^{K-k}, built downward
  for (std::size_t j = 0; j < K; ++j) q_pow *= q;
  cpp_int fact_ratio = k_factorial;  // K!/k!
  for (std::size_t k = 0; k <= K; ++k) {
    cpp_int term = p_pow * q_pow * fact_ratio;
    a += (k % 2 == 0) ? term : -term;
    p_pow *= p;
    if (k < K) {
      q_pow /= q;
      fact_ratio /= (k + 1);
    }
  }
  if (a < 0) {
    throw std::logic_error("two_exp_neg_upper: partial sum negative despite even cut");
  }
  cpp_int den = k_factorial;
  for (std::size_t j = 0; j < K; ++j) den *= q;
  // D = ceil(2 * S_K * 2^prec) / 2^prec  >=  2 e^{-x}.
  cpp_int scaled = a * 2 * (cpp_int(1) << precision_bits);
  cpp_int num = scaled / den;
  if (num * den != scaled) ++num;
  return DyadicRational::scaled(num, precision_bits);
}

DyadicRational chernoff_exponential_majorant(std::size_t block_len, std::size_t m,
                                             std::size_t target) {
  cpp_int p(static_cast<unsigned long>(block_len));
  cpp_int q(static_cast<unsigned long>(6 * m * m));
  DyadicRational limit = DyadicRational::pow2(-static_cast<long>(target));
  DyadicRational best = two_exp_neg_upper(p, q, target + 8, 8);
  for (std::size_t extra = 16; best > limit && extra <= 1024; extra *= 2) {
    best = two_exp_neg_upper(p, q, target + extra, extra);
  }
  if (best > limit) {
    throw std::runtime_error("chernoff_exponential_majorant: 2e^{-N/(6m^2)} does not certify below 2^-" +
                             std::to_string(target) + " (N = " + std::to_string(block_len) + ")");
  }
  return best;
}

cpp_int binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  cpp_int out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

}  // namespace brt
