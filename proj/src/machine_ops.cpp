#include "brt/machine_ops.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace brt {

ComplexityReport plain_complexity(const Machine& m, const BitString& target, std::size_t max_len,
                                  const SequencePrefix* oracle) {
  ComplexityReport report;
  report.target = target;
  report.searched_len = max_len;
  for (std::size_t len = 0; len <= max_len; ++len) {
    BitString sigma = BitString::zeros(len);
    do {
      RunResult r = m.run(sigma, oracle);
      if (r.status == RunStatus::BudgetExceeded) ++report.budget_hits;
      if (r.ok() && r.output == target) {
        report.witness = sigma;
        report.value = len;
        return report;
      }
    } while (sigma.next_same_length());
  }
  return report;
}

CompressionVerdict check_compression(const Machine& m, const LengthSchedule& f,
                                     const SequencePrefix& x, std::size_t c_max,
                                     const SequencePrefix* oracle) {
  CompressionVerdict verdict;
  verdict.holds_at.reserve(c_max + 1);
  for (std::size_t c = 0; c <= c_max; ++c) {
    std::size_t fc = f(c);
    if (fc < c) {
      throw std::invalid_argument("check_compression: f(c) < c");
    }
    BitString target = x.prefix(fc);
    ComplexityReport r = plain_complexity(m, target, fc - c, oracle);
    bool holds = r.value.has_value();
    verdict.holds_at.push_back(holds);
    if (!holds && !verdict.first_violation) {
      verdict.first_violation = c;
      verdict.compressed_through_c_max = false;
    }
  }
  return verdict;
}

BoundedTest test_from_compressor(std::shared_ptr<const Machine> m, const LengthSchedule& f,
                                 std::size_t enumeration_cap) {
  auto level_of = LengthSchedule::from_function(
      "f(c+1)", [f](std::size_t c) { return f(c + 1); });
  auto rule = [m, f, enumeration_cap](std::size_t c) {
    std::size_t level = f(c + 1);
    if (level < c + 1) {
      throw std::invalid_argument("test_from_compressor: f(c+1) < c+1");
    }
    std::size_t desc_len = level - c - 1;
    if (desc_len > enumeration_cap) {
      throw std::invalid_argument("test_from_compressor: description space too large");
    }
    std::vector<BitString> gens;
    for (std::size_t len = 0; len <= desc_len; ++len) {
      BitString sigma = BitString::zeros(len);
      do {
        RunResult r = m->run(sigma);
        if (r.ok() && r.output.size() == level) {
          gens.push_back(r.output);
        }
      } while (sigma.next_same_length());
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return Stage(ClopenSet(level, std::move(gens)));
  };
  return BoundedTest(level_of, rule, false, std::nullopt, "image(" + m->name() + ")");
}

namespace {

/// Shared data of the staged process-machine construction.
struct CompressorState {
  std::vector<std::size_t> boundary;           // B_c = F(c) - c, c = 0..depth
  std::vector<std::size_t> flevel;             // F(c)
  std::vector<std::vector<BitString>> gens;    // sorted stage generators, stage 0 = {""}
  std::mutex mutex;
  std::map<std::string, BitString> memo;       // boundary prefix -> value
};

/// Value of M at a boundary length B_c (c >= 1), by the staged rules.
BitString boundary_output(CompressorState& st, const BitString& nu, std::size_t c) {
  std::string key = nu.str();
  {
    std::lock_guard<std::mutex> lock(st.mutex);
    auto it = st.memo.find(key);
    if (it != st.memo.end()) return it->second;
  }
  BitString value;
  if (c == 1) {
    // Lexicographically first k(1) descriptions map onto the sorted stage-1
    // generators; the rest map to the all-zero word of length F(1).
    std::size_t idx = static_cast<std::size_t>(nu.value());
    value = idx < st.gens[1].size() ? st.gens[1][idx] : BitString::zeros(st.flevel[1]);
  } else {
    BitString parent = nu.prefix(st.boundary[c - 1]);
    BitString prev = boundary_output(st, parent, c - 1);
    std::size_t gap = st.flevel[c] - st.flevel[c - 1];
    const auto& stage_gens = st.gens[c - 1];
    bool in_stage = std::binary_search(stage_gens.begin(), stage_gens.end(), prev);
    if (!in_stage) {
      value = prev + BitString::zeros(gap);
    } else {
      // Extensions of prev inside the next stage, in lexicographic order.
      std::vector<BitString> rho;
      for (const auto& g : st.gens[c]) {
        if (prev.is_prefix_of(g)) rho.push_back(g.suffix_from(prev.size()));
      }
      if (rho.size() > (std::size_t{1} << (gap - 1))) {
        throw TestInvariantViolation(
            "compressor_from_test: weak inequality fails below " + prev.str());
      }
      BitString tail = nu.suffix_from(st.boundary[c - 1]);  // length gap - 1
      std::size_t idx = static_cast<std::size_t>(tail.value());
      value = idx < rho.size() ? prev + rho[idx] : prev + BitString::zeros(gap);
    }
  }
  std::lock_guard<std::mutex> lock(st.mutex);
  auto [it, inserted] = st.memo.emplace(std::move(key), std::move(value));
  return it->second;
}

BitString staged_output(CompressorState& st, const BitString& sigma) {
  std::size_t depth = st.boundary.size() - 1;
  if (depth == 0 || sigma.size() < st.boundary[1]) {
    return BitString();  // below the first boundary everything maps to ""
  }
  // Largest c with B_c <= |sigma|, capped at depth; plateau between
  // boundaries and beyond the last one.
  std::size_t c = 1;
  while (c < depth && st.boundary[c + 1] <= sigma.size()) ++c;
  return boundary_output(st, sigma.prefix(st.boundary[c]), c);
}

}  // namespace

CompressorResult compressor_from_test(const BoundedTest& t, std::size_t depth) {
  const LengthSchedule& l = t.schedule();

  // Repair: stage 0 becomes the full space (F(0) = 0); later stages are a
  // subsequence m_c with F(c+1) >= F(c) + 2, which keeps the description
  // lengths F(c) - c strictly increasing.
  std::vector<std::size_t> picked{0};
  std::vector<std::size_t> flevel{0};
  for (std::size_t c = 1; c <= depth; ++c) {
    std::size_t m = picked.back() + 1;
    while (l(m) < flevel.back() + 2) ++m;
    if (t.max_stage() && m > *t.max_stage()) {
      throw std::out_of_range("compressor_from_test: test too shallow for depth " +
                              std::to_string(depth));
    }
    picked.push_back(m);
    flevel.push_back(l(m));
  }

  std::vector<Stage> repaired_stages;
  repaired_stages.push_back(Stage(ClopenSet::full(0)));
  for (std::size_t c = 1; c <= depth; ++c) {
    repaired_stages.push_back(t.stage(picked[c]));
  }
  BoundedTest repaired =
      BoundedTest::from_stages(std::move(repaired_stages), true, t.name() + ".staged");

  if (auto v = find_weak_violation(repaired, depth)) {
    throw std::invalid_argument("compressor_from_test: input is not weak at repaired stage " +
                                std::to_string(v->n) + " generator " + v->tau.str());
  }
  if (!is_nested(repaired, depth)) {
    throw std::invalid_argument("compressor_from_test: input stages are not nested");
  }

  auto st = std::make_shared<CompressorState>();
  st->flevel = flevel;
  for (std::size_t c = 0; c <= depth; ++c) {
    st->boundary.push_back(flevel[c] - c);
    st->gens.push_back(repaired.stage(c).set().generators());
  }
  for (std::size_t c = 1; c <= depth; ++c) {
    if (st->boundary[c] <= st->boundary[c - 1]) {
      throw std::logic_error("compressor_from_test: boundary lengths not increasing");
    }
  }
  // Stage-1 feasibility: k(1) <= 2^{F(1)-1} descriptions of length F(1)-1.
  if (st->gens[1].size() > (std::size_t{1} << st->boundary[1])) {
    throw TestInvariantViolation("compressor_from_test: stage 1 too heavy");
  }

  auto fn = [st](const BitString& input, const SequencePrefix*) {
    RunResult out;
    out.output = staged_output(*st, input);
    return out;
  };
  auto machine = std::make_shared<NativeMachine>("process(" + t.name() + ")", fn, false);

  // h(m) = F(h'(m)) with h'(m) the least c such that m < B_{c+1}; the
  // plateau beyond the built depth keeps the table's tail.
  std::vector<std::size_t> hvals;
  for (std::size_t m = 0; m <= st->boundary[depth]; ++m) {
    std::size_t c = 0;
    while (c < depth && st->boundary[c + 1] <= m) ++c;
    hvals.push_back(flevel[c]);
  }
  OrderFunction h(hvals);

  CompressorResult result{machine,
                          std::move(h),
                          LengthSchedule::table(flevel),
                          depth,
                          st->boundary[depth],
                          std::move(picked),
                          std::move(repaired)};
  return result;
}

PrefixFreeResult prefix_free_from_test(const BoundedTest& t, std::size_t depth) {
  const LengthSchedule& l = t.schedule();
  // U_{2c} replacement: squared measure bound and an automatic description
  // length gap, since l(2c+2) >= l(2c) + 2.
  std::vector<std::size_t> flevel;
  for (std::size_t c = 0; c <= depth; ++c) {
    if (t.max_stage() && 2 * c > *t.max_stage()) {
      throw std::out_of_range("prefix_free_from_test: test too shallow for depth " +
                              std::to_string(depth));
    }
    flevel.push_back(l(2 * c));
  }

  PrefixFreeResult result;
  result.depth = depth;
  result.f = LengthSchedule::table(flevel);

  // Assign fresh descriptions per stage, skipping extensions of anything
  // already defined (the domain stays an antichain).
  std::map<BitString, BitString> defined;
  std::vector<std::vector<BitString>> domain_by_stage{{}};  // stage 0 unused
  std::vector<std::size_t> lengths{0};
  std::vector<std::pair<std::size_t, std::vector<BitString>>> earlier;  // (length, sorted words)
  for (std::size_t c = 1; c <= depth; ++c) {
    std::size_t dlen = flevel[c] - c;
    lengths.push_back(dlen);
    const auto& gens = t.stage(2 * c).set().generators();
    std::vector<BitString> fresh;
    fresh.reserve(gens.size());
    if (dlen > 24) {
      throw std::invalid_argument("prefix_free_from_test: description space too large");
    }
    BitString candidate = BitString::zeros(dlen);
    bool exhausted = false;
    while (fresh.size() < gens.size()) {
      bool blocked = false;
      for (const auto& [len, words] : earlier) {
        if (len <= dlen &&
            std::binary_search(words.begin(), words.end(), candidate.prefix(len))) {
          blocked = true;
          break;
        }
      }
      if (!blocked) fresh.push_back(candidate);
      if (!candidate.next_same_length()) {
        exhausted = fresh.size() < gens.size();
        break;
      }
    }
    if (exhausted) {
      throw std::logic_error("prefix_free_from_test: insufficient fresh descriptions at stage " +
                             std::to_string(c));
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      defined.emplace(fresh[i], gens[i]);
    }
    earlier.emplace_back(dlen, fresh);
    domain_by_stage.push_back(std::move(fresh));
  }

  auto table = std::make_shared<std::map<BitString, BitString>>(std::move(defined));
  auto fn = [table](const BitString& input, const SequencePrefix*) {
    RunResult out;
    auto it = table->find(input);
    if (it == table->end()) {
      out.status = RunStatus::Diverged;
    } else {
      out.output = it->second;
    }
    return out;
  };
  result.machine =
      std::make_shared<NativeMachine>("prefix-free(" + t.name() + ")", fn, false);
  result.domain_lengths = std::move(lengths);
  result.domain = std::move(domain_by_stage);
  return result;
}

}  // namespace brt
