#include "brt/generators.hpp"

#include <algorithm>
#include <set>

#include "brt/test_ops.hpp"

namespace brt {

namespace {

/// All Ok outputs of m on descriptions of length <= max_len that have
/// length exactly `target_len`.  Budget failures abort the construction.
std::set<BitString> forbidden_images(const Machine& m, const std::string& entry_name,
                                     std::size_t max_len, std::size_t target_len,
                                     const SequencePrefix* oracle,
                                     std::vector<std::size_t>* queries = nullptr) {
  std::set<BitString> images;
  for (std::size_t len = 0; len <= max_len; ++len) {
    BitString sigma = BitString::zeros(len);
    do {
      RunResult r = m.run(sigma, oracle);
      if (r.status == RunStatus::BudgetExceeded) {
        throw GeneratorError("registry machine '" + entry_name + "' exceeded its budget on |" +
                             sigma.str() + "|");
      }
      if (r.status == RunStatus::OracleUnavailable || r.status == RunStatus::OracleOutOfRange) {
        throw GeneratorError("registry machine '" + entry_name + "' failed an oracle access");
      }
      if (queries) {
        queries->insert(queries->end(), r.oracle_queries.begin(), r.oracle_queries.end());
      }
      if (r.ok() && r.output.size() == target_len) {
        images.insert(r.output);
      }
    } while (sigma.next_same_length());
  }
  return images;
}

/// Lexicographically first extension of `prefix` to target_len avoiding the
/// forbidden set.  The counting argument guarantees one exists.
BitString first_avoiding_extension(const BitString& prefix, std::size_t target_len,
                                   const std::set<BitString>& forbidden) {
  BitString tail = BitString::zeros(target_len - prefix.size());
  do {
    BitString candidate = prefix + tail;
    if (forbidden.find(candidate) == forbidden.end()) {
      return candidate;
    }
  } while (tail.next_same_length());
  throw std::logic_error(
      "diagonalization: no avoiding extension exists; the counting bound was violated");
}

/// One diagonalization stage: extend `bits` (length c) to length f(c).
DiagonalStage run_stage(BitString& bits, const RegistryEntry& entry, std::size_t index,
                        const SequencePrefix* oracle = nullptr) {
  std::size_t c = bits.size();
  std::size_t target = entry.f(c);
  if (target <= c) {
    throw GeneratorError("registry entry '" + entry.name + "' has f(c) <= c at c = " +
                         std::to_string(c));
  }
  std::size_t desc_len = target - c - 1;
  auto images = forbidden_images(*entry.machine, entry.name, desc_len, target, oracle);
  BitString chosen = first_avoiding_extension(bits, target, images);
  DiagonalStage log{index, entry.name, c, target, chosen};
  bits = std::move(chosen);
  return log;
}

}  // namespace

DiagonalResult diagonal_real(const Registry& registry, std::size_t length) {
  DiagonalResult result;
  std::size_t k = 0;
  for (const auto& entry : registry) {
    result.log.push_back(run_stage(result.bits, entry, ++k));
  }
  while (result.bits.size() < length) result.bits.push_back(0);
  return result;
}

OscillatingResult oscillating_real(const Registry& registry,
                                   const std::vector<OscillationBlocks>& dips,
                                   std::size_t length) {
  OscillatingResult result;
  std::size_t k = 0;
  std::size_t block_idx = 0;  // 2 per dips entry: low then high
  auto append_block = [&result](std::size_t size, int bit) {
    for (std::size_t i = 0; i < size; ++i) result.bits.push_back(bit);
    result.checkpoints.push_back(DensityCheckpoint{result.bits.size(), bit == 0});
  };
  for (const auto& entry : registry) {
    result.log.push_back(run_stage(result.bits, entry, ++k));
    if (block_idx / 2 < dips.size()) {
      bool low = block_idx % 2 == 0;
      const auto& spec = dips[block_idx / 2];
      std::size_t requested = low ? spec.low : spec.high;
      std::size_t size = requested ? requested : 3 * result.bits.size() + 1;
      append_block(size, low ? 0 : 1);
      ++block_idx;
    }
  }
  // Any blocks not yet placed (more alternations than registry entries).
  while (block_idx / 2 < dips.size()) {
    bool low = block_idx % 2 == 0;
    const auto& spec = dips[block_idx / 2];
    std::size_t requested = low ? spec.low : spec.high;
    std::size_t size = requested ? requested : 3 * result.bits.size() + 1;
    append_block(size, low ? 0 : 1);
    ++block_idx;
  }
  while (result.bits.size() < length) result.bits.push_back(0);
  return result;
}

BitString join_sequences(const BitString& a, const BitString& b) {
  return interleave(a, b);
}

CounterexampleResult counterexample_pair(const Registry& oracle_registry, std::size_t stages) {
  CounterexampleResult result;
  result.h.push_back(0);
  for (std::size_t j = 0; j < stages; ++j) {
    const auto& entry = oracle_registry[j % oracle_registry.size()];
    // Stage 2j+1: extend A to defeat M_j with oracle B-so-far (zero padded);
    // B is zero across the new block.
    {
      std::size_t c = result.h.back() + 1;
      std::size_t target = entry.f(c);
      if (target <= c) {
        throw GeneratorError("oracle registry entry '" + entry.name + "' has f(c) <= c");
      }
      SequencePrefix x = SequencePrefix::zero_padded(result.b);
      std::vector<std::size_t> queries;
      auto images =
          forbidden_images(*entry.machine, entry.name, target - c, target, &x, &queries);
      BitString chosen = first_avoiding_extension(result.a, target, images);
      std::size_t boundary = target;
      for (std::size_t q : queries) boundary = std::max(boundary, q + 1);
      result.a = chosen;
      while (result.a.size() < boundary) result.a.push_back(0);
      while (result.b.size() < boundary) result.b.push_back(0);
      result.h.push_back(boundary);
      result.witnesses.push_back(CounterexampleWitness{j, true, c, target});
    }
    // Stage 2j+2: symmetric, extending B against M_j with oracle A-so-far.
    {
      std::size_t c = result.h.back() + 1;
      std::size_t target = entry.f(c);
      SequencePrefix x = SequencePrefix::zero_padded(result.a);
      std::vector<std::size_t> queries;
      auto images =
          forbidden_images(*entry.machine, entry.name, target - c, target, &x, &queries);
      BitString chosen = first_avoiding_extension(result.b, target, images);
      std::size_t boundary = target;
      for (std::size_t q : queries) boundary = std::max(boundary, q + 1);
      result.b = chosen;
      while (result.b.size() < boundary) result.b.push_back(0);
      while (result.a.size() < boundary) result.a.push_back(0);
      result.h.push_back(boundary);
      result.witnesses.push_back(CounterexampleWitness{j, false, c, target});
    }
  }
  return result;
}

BoundedTest zero_block_test(const std::vector<std::size_t>& h) {
  if (h.empty() || h[0] != 0) {
    throw std::invalid_argument("zero_block_test: boundaries must start at 0");
  }
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i] <= h[i - 1]) {
      throw std::invalid_argument("zero_block_test: boundaries must be strictly increasing");
    }
  }
  auto boundaries = std::make_shared<std::vector<std::size_t>>(h);
  auto level_of = LengthSchedule::from_function("zero-block", [boundaries](std::size_t n) {
    if (n >= boundaries->size()) {
      throw std::out_of_range("zero_block_test: stage beyond built boundaries");
    }
    return 2 * (*boundaries)[n];
  });
  auto rule = [boundaries](std::size_t n) {
    std::size_t level = 2 * (*boundaries)[n];
    // Constrained join positions of the first n blocks: odd positions over
    // even blocks (B zero there), even positions over odd blocks (A zero).
    auto constrained = std::make_shared<std::vector<std::size_t>>();
    for (std::size_t i = 0; i + 1 <= n; ++i) {
      for (std::size_t p = (*boundaries)[i]; p < (*boundaries)[i + 1]; ++p) {
        constrained->push_back(i % 2 == 0 ? 2 * p + 1 : 2 * p);
      }
    }
    cpp_int count = cpp_int(1) << (level - constrained->size());
    auto member = [constrained](const BitString& w) {
      for (std::size_t p : *constrained) {
        if (w.bit(p) != 0) return false;
      }
      return true;
    };
    return Stage::predicate(level, count, member);
  };
  return BoundedTest(level_of, rule, false, h.size() - 1, "zero-block");
}

bool DensityRow::within(std::size_t eps_num, std::size_t eps_den) const {
  // |ones/n - 1/2| <= eps  <=>  |2*ones - n| * eps_den <= 2 * n * eps_num.
  long long diff = 2ll * static_cast<long long>(ones) - static_cast<long long>(n);
  unsigned long long mag = diff < 0 ? -diff : diff;
  return mag * eps_den <= 2ull * n * eps_num;
}

std::vector<DensityRow> density_report(const SequencePrefix& x,
                                       const std::vector<std::size_t>& checkpoints) {
  std::vector<DensityRow> out;
  out.reserve(checkpoints.size());
  for (std::size_t n : checkpoints) {
    BitString prefix = x.prefix(n);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += prefix.bit(i);
    out.push_back(DensityRow{n, ones});
  }
  return out;
}

}  // namespace brt
