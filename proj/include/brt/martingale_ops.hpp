#pragma once

#include "brt/bounded_test.hpp"
#include "brt/martingale.hpp"
#include "brt/test_ops.hpp"

namespace brt {

struct SavingsResult {
  Martingale transformed;
  LengthSchedule witness;  // f'(n) = f(2^{n+1}) doubling, f(2n) quadrupling
};

/// Savings-account surgery: each time the running capital crosses the next
/// threshold (2^{n+1} doubling, 4^{n+1} quadrupling), half of it is locked
/// away; the locked series makes success persistent.  `f` is the witness
/// schedule of `d` and is re-indexed accordingly.
SavingsResult savings_transform(const Martingale& d, const LengthSchedule& f, bool quadrupling);

/// Number of thresholds crossed along tau (the n(tau) of the transform),
/// exposed for tests.
std::size_t savings_crossings(const Martingale& d, const BitString& tau, bool quadrupling);

/// Builds the stagewise-product martingale out of a weak nested test:
/// inside each stage-n generator block the capital doubles onto the
/// stage-(n+1) generators (padded to exactly half the block with the
/// lexicographically first absent extensions), so stage-n generators carry
/// capital at least 2^n.  Requires the weak inequality and nestedness
/// through `depth`; refuses otherwise.
Martingale martingale_from_test(const BoundedTest& t, std::size_t depth);

/// G_n = words of length f(n) with d >= 2^n.  Kraft keeps the measure
/// within 2^-n; the stage accessor verifies that exactly.
BoundedTest test_from_martingale(const Martingale& d, const LengthSchedule& f,
                                 std::size_t enumeration_cap = 22);

struct FirstHittingResult {
  BoundedTest test;                              // V_n = U_{2n}, refined stages
  std::vector<std::vector<BitString>> hit_sets;  // per weak stage: the minimal-hit antichain
  bool antichain_weak;                           // weak inequality over the antichains
  bool refined_weak;                             // weak inequality over refined generators
};

/// U_k = prefix-minimal words sigma, |sigma| <= f(k), whose capital first
/// reaches 2^k at sigma itself; the returned test is V_n = U_{2n}.  The
/// weak inequality is guaranteed for the minimal-hit antichains (Kraft);
/// the refined uniform-level generator lists usually satisfy it too but
/// need not, so both verdicts are reported.
FirstHittingResult first_hitting_test(const Martingale& d, const LengthSchedule& f,
                                      std::size_t depth);

struct SummedMartingaleResult {
  Martingale d;
  std::size_t depth;  // components i = 1..depth were built from stages 3i-1
  /// Component martingale d_i evaluated at sigma (1 <= i <= depth).
  std::function<DyadicRational(std::size_t, const BitString&)> component;
};

/// d = sum_i 2^{-i} d_i where d_i boosts capital 2^{2i} onto stage 3i-1
/// (padded per length-(i-1) block to an exact power of two); the tail of
/// the series beyond |sigma| collapses to 2^{-|sigma|} in closed form.
SummedMartingaleResult summed_martingale_from_test(const BoundedTest& t, std::size_t depth);

}  // namespace brt
