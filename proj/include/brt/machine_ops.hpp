#pragma once

#include <memory>

#include "brt/bounded_test.hpp"
#include "brt/machine.hpp"
#include "brt/schedule.hpp"
#include "brt/test_ops.hpp"

namespace brt {

/// Result of a bounded shortest-description search.
struct ComplexityReport {
  BitString target;
  std::optional<BitString> witness;    // lexicographically first among shortest
  std::optional<std::size_t> value;    // C_M(target), absent = no preimage found
  std::size_t searched_len = 0;        // lengths 0..searched_len were exhausted
  std::size_t budget_hits = 0;         // runs cut off by budgets during the search
  bool infinite() const { return !value.has_value(); }
};

/// Exhaustive search in length-then-lexicographic order over descriptions
/// of length <= max_len.
ComplexityReport plain_complexity(const Machine& m, const BitString& target, std::size_t max_len,
                                  const SequencePrefix* oracle = nullptr);

struct CompressionVerdict {
  bool compressed_through_c_max = true;
  std::vector<bool> holds_at;          // per c: C_M(X|f(c)) <= f(c)-c
  std::optional<std::size_t> first_violation;
};

/// Checks the compressibility inequality for each c <= c_max; the search
/// bound f(c)-c makes each check an exact decision.
CompressionVerdict check_compression(const Machine& m, const LengthSchedule& f,
                                     const SequencePrefix& x, std::size_t c_max,
                                     const SequencePrefix* oracle = nullptr);

/// Stage c = the length-f(c+1) outputs of descriptions shorter than
/// f(c+1)-c; counting gives measure < 2^-c.  Any X compressed by (M, f)
/// fails every stage.  The test keeps shared ownership of the machine (its
/// stages evaluate lazily).
BoundedTest test_from_compressor(std::shared_ptr<const Machine> m, const LengthSchedule& f,
                                 std::size_t enumeration_cap = 22);

struct CompressorResult {
  std::shared_ptr<Machine> machine;  // total quick process machine
  OrderFunction h;                   // |M(s)| >= h(|s|)
  LengthSchedule f;                  // repaired stage schedule F(c)
  std::size_t depth;                 // stages 0..depth were consumed
  std::size_t valid_input_len;       // F(depth)-depth; longer inputs plateau
  std::vector<std::size_t> picked_stages;  // repair subsequence m_c
  BoundedTest repaired;              // the repaired test the machine serves
};

/// Builds the staged quick process machine of a weak nested test: stage-c
/// generators acquire preimages of length exactly F(c)-c, lexicographically
/// first strings mapping to lexicographically ordered generators, everything
/// else extending by zeros.  The stage subsequence m_c enforces
/// F(c+1)-(c+1) > F(c)-c and F(0) = 0 (stage 0 is replaced by the full
/// space); the input must be weak and nested through the consumed stages,
/// otherwise the construction refuses.
CompressorResult compressor_from_test(const BoundedTest& t, std::size_t depth);

struct PrefixFreeResult {
  std::shared_ptr<Machine> machine;  // partial; off-domain inputs diverge
  LengthSchedule f;                  // f~(c) = l(2c) after the U_{2c} replacement
  std::size_t depth;
  std::vector<std::size_t> domain_lengths;          // f~(c)-c per stage c >= 1
  std::vector<std::vector<BitString>> domain;       // defined words per stage
};

/// Prefix-free variant: replaces stages by U_{2c} (squared measure bound),
/// then maps fresh length-(f~(c)-c) descriptions onto stage generators; the
/// domain is an antichain and its defined fraction at each length is at
/// most 2^-c.
PrefixFreeResult prefix_free_from_test(const BoundedTest& t, std::size_t depth);

}  // namespace brt
