#pragma once

#include <optional>
#include <vector>

#include "brt/bounded_test.hpp"
#include "brt/exp_bounds.hpp"

namespace brt {

/// Evaluates stages 0..depth and returns their exact measures (the stage
/// accessor itself enforces the 2^-n bound).
std::vector<DyadicRational> stage_measures(const BoundedTest& t, std::size_t depth);

/// One weak-inequality violation: mu(stage(n+1) ∩ [tau]) > tau's half-measure.
struct WeakViolation {
  std::size_t n;
  BitString tau;
  DyadicRational lhs;
  DyadicRational rhs;
};

/// Exact check of the weak-test inequality for every generator of stages
/// 0..depth-1 against the following stage.  Stages must be explicit.
std::optional<WeakViolation> find_weak_violation(const BoundedTest& t, std::size_t depth);

/// Same inequality checked against caller-provided generator families
/// (used for constructions whose natural generators are mixed-length
/// antichains rather than the refined uniform-level lists).
std::optional<WeakViolation> find_weak_violation(const BoundedTest& t, std::size_t depth,
                                                 const std::vector<std::vector<BitString>>& gens);

/// Is every stage-(n+1) generator covered by stage n, for n < depth?
bool is_nested(const BoundedTest& t, std::size_t depth);

/// Level-l(depth) words lying in every stage 0..depth (the failing
/// prefixes), computed by iterated exact intersection.  Explicit stages.
ClopenSet failing_prefixes(const BoundedTest& t, std::size_t depth);

/// Pads every stage to measure exactly 2^-n with the lexicographically
/// first absent words.  Requires l(n) >= n (rejected otherwise, never
/// repaired).  Works on predicate stages that carry a counting hook.
BoundedTest normalize_to_exact(const BoundedTest& t, std::size_t depth);

struct WeakenResult {
  BoundedTest test;                 // the weak test V_n = W_{h(n)}
  std::vector<std::size_t> h;       // stage subsequence indices
  std::size_t achieved_depth;       // last weak stage that could be built
};

/// Prop-2-style weakening: nest the stages (W_n = intersection of U_0..U_n)
/// and pass to the subsequence h(0)=0, h(n+1) = l(h(n))+1.  If the input
/// has a stage cap the result may stop short of `depth`; achieved_depth
/// records how far it got.
WeakenResult weaken(const BoundedTest& t, std::size_t depth);

/// G_n = all words of length f(n) carrying a 1 at positions f(0)..f(n-1).
BoundedTest immunity_test(const LengthSchedule& f);

/// --- Chernoff machinery ---

/// Words of length n whose 1-density deviates from 1/2 by strictly more
/// than eps = eps_num/eps_den.  Explicit enumeration; n <= 26.
ClopenSet chernoff_stage_set(std::size_t n, std::size_t eps_num, std::size_t eps_den);

/// Exact number of such words, by binomial counting (any n).
cpp_int chernoff_tail_count(std::size_t n, std::size_t eps_num, std::size_t eps_den);

/// Block length of the j-th deviation set: ceil(6 m^2 (j+1) ln 2).
std::size_t chernoff_block_length(std::size_t m, std::size_t j);

/// The deviation set S_{block,1/m} as a stage: explicit generator list up
/// to `explicit_threshold`, else predicate form with the exact binomial
/// count and a lexicographic counting hook.
Stage chernoff_stage(std::size_t block, std::size_t m, std::size_t explicit_threshold);

/// The test U_n = S_{N(f(n)), 1/m}.  Stages with block length at most
/// `explicit_threshold` materialize generator lists; larger ones are
/// predicate stages with exact binomial counts and a counting hook.
BoundedTest chernoff_test(std::size_t m, const LengthSchedule& f,
                          std::size_t explicit_threshold = 20);

/// Dyadic majorant certifying mu(S_{N(j),1/m}) <= 2 e^{-N/(6m^2)} <= 2^-j.
DyadicRational chernoff_certified_bound(std::size_t m, std::size_t j);

/// Stage n of the result holds the reals X with (X(g(0)),...,X(g(l(n)-1)))
/// landing in stage n of t; level g(l(n))+1, measure preserved exactly.
BoundedTest ville_pullback(const BoundedTest& t, const LengthSchedule& g,
                           std::size_t explicit_threshold = 22);

/// --- Relative tests and the van Lambalgen join ---

/// An oracle test: a stage rule whose generator family may consult the
/// oracle.  The rule must only read oracle positions below bound(n); the
/// join construction enforces this by handing it exactly bound(n) oracle
/// bits (any deeper read raises PrefixTooShort, reported as a construction
/// error).  Generators may be mixed-length (at most bound(n)); they are
/// refined through the uniform-level constructor.
struct OracleTest {
  std::string name;
  LengthSchedule bound;
  std::function<ClopenSet(std::size_t, const SequencePrefix&)> stage;
};

/// Least n <= depth with X escaping stage n of tO^oracle.
PassVerdict oracle_passes(const OracleTest& t, const SequencePrefix& oracle,
                          const SequencePrefix& x, std::size_t depth);

/// Stage n = { a (+) b : a, b of length bound(n), b in [G^a_n] }, where
/// (+) interleaves a on even and b on odd positions.
BoundedTest lambalgen_join_test(const OracleTest& t);

/// Interleaving and its inverse.
BitString interleave(const BitString& a, const BitString& b);
std::pair<BitString, BitString> deinterleave(const BitString& joined);

}  // namespace brt
