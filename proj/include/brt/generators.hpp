#pragma once

#include <memory>
#include <string>
#include <vector>

#include "brt/bounded_test.hpp"
#include "brt/machine.hpp"
#include "brt/schedule.hpp"

namespace brt {

/// One entry of the finite machine/schedule registry against which the
/// constructive reals diagonalize.
struct RegistryEntry {
  std::string name;
  std::shared_ptr<Machine> machine;
  LengthSchedule f;
};

using Registry = std::vector<RegistryEntry>;

/// Per-stage record of a diagonalization run.
struct DiagonalStage {
  std::size_t index;        // k (1-based stage number)
  std::string entry;        // registry entry name
  std::size_t c;            // prefix length when the stage began
  std::size_t target_len;   // f_k(c) = n_{k+1}
  BitString chosen;         // the extension picked for this stage
};

struct DiagonalResult {
  BitString bits;                   // the built prefix (at least `length` bits)
  std::vector<DiagonalStage> log;
};

/// Thrown when a registry machine fails to complete within budget during a
/// construction; names the offending entry.
class GeneratorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Stage k+1 extends the prefix (length c) to length f_k(c) with the
/// lexicographically first extension avoiding every M_k image of
/// descriptions shorter than f_k(c) - c; afterwards the prefix is padded
/// with zeros to `length`.  Guarantees, per processed entry:
/// C_{M_k}(X | f_k(c)) > f_k(c) - c - 1.
DiagonalResult diagonal_real(const Registry& registry, std::size_t length);

/// Density checkpoint of an oscillating construction.
struct DensityCheckpoint {
  std::size_t position;  // prefix length at which the density is sampled
  bool low;              // true: below 1/4 expected; false: above 3/4
};

struct OscillatingResult {
  BitString bits;
  std::vector<DiagonalStage> log;
  std::vector<DensityCheckpoint> checkpoints;
};

/// Block sizes for one low/high alternation; 0 means "3 * current + 1",
/// which forces the density strictly below 1/4 (after the zero block) and
/// strictly above 3/4 (after the one block).
struct OscillationBlocks {
  std::size_t low = 0;
  std::size_t high = 0;
};

/// Interleaves diagonalization stages with alternating zero and one blocks;
/// each stage's incompressibility witness is computed at the prefix length
/// where the stage actually begins, so the blocks do not disturb it.
OscillatingResult oscillating_real(const Registry& registry,
                                   const std::vector<OscillationBlocks>& dips,
                                   std::size_t length);

/// A (+) B: A on even positions, B on odd; truncates to the shorter input.
BitString join_sequences(const BitString& a, const BitString& b);

struct CounterexampleWitness {
  std::size_t j;          // registry index
  bool protects_a;        // true: stage 2j+1 (A against M_j^B); false: stage 2j+2
  std::size_t c;          // h(stage-1) + 1
  std::size_t target_len; // f_j(c)
};

struct CounterexampleResult {
  BitString a;
  BitString b;
  std::vector<std::size_t> h;  // block boundaries h[0..2*stages]
  std::vector<CounterexampleWitness> witnesses;
};

/// Builds the pair that defeats the converse of the join theorem: A and B
/// alternate zero blocks (B zero on even blocks, A zero on odd ones), while
/// stage 2j+1 picks A's extension to avoid every M_j^{B0...} image and
/// stage 2j+2 does the same for B against M_j^{A0...}.  Oracle query
/// positions recorded during the stage determine the block boundary h.
CounterexampleResult counterexample_pair(const Registry& oracle_registry, std::size_t stages);

/// The explicit test failed by the join of a counterexample pair: stage n
/// constrains the designated-zero positions of the first n blocks.
BoundedTest zero_block_test(const std::vector<std::size_t>& h);

/// Exact prefix densities: (ones in the first n bits, n) per checkpoint.
struct DensityRow {
  std::size_t n;
  std::size_t ones;
  /// |ones/n - 1/2| <= eps for eps = eps_num/eps_den (exact comparison).
  bool within(std::size_t eps_num, std::size_t eps_den) const;
  /// density < 1/4, > 3/4 (exact).
  bool below_quarter() const { return 4 * ones < n; }
  bool above_three_quarters() const { return 4 * ones > 3 * n; }
};

std::vector<DensityRow> density_report(const SequencePrefix& x,
                                       const std::vector<std::size_t>& checkpoints);

}  // namespace brt
