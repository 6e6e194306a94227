#include "brt/martingale_ops.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace brt {

namespace {

DyadicRational threshold(bool quadrupling, std::size_t n) {
  // 2^{n+1} for doubling, 4^{n+1} for quadrupling.
  return DyadicRational::pow2(static_cast<long>(quadrupling ? 2 * (n + 1) : n + 1));
}

}  // namespace

std::size_t savings_crossings(const Martingale& d, const BitString& tau, bool quadrupling) {
  std::size_t n = 0;
  for (std::size_t len = 0; len <= tau.size(); ++len) {
    DyadicRational v = d(tau.prefix(len));
    while (v >= threshold(quadrupling, n)) ++n;
  }
  return n;
}

SavingsResult savings_transform(const Martingale& d, const LengthSchedule& f, bool quadrupling) {
  auto eval = [d, quadrupling](const BitString& tau) {
    // Walk prefixes; when the capital first reaches threshold n, bank
    // d(prefix)/2^{n+1}.
    DyadicRational banked;
    std::size_t n = 0;
    for (std::size_t len = 0; len <= tau.size(); ++len) {
      DyadicRational v = d(tau.prefix(len));
      while (v >= threshold(quadrupling, n)) {
        banked += v.mul_pow2(-static_cast<long>(n) - 1);
        ++n;
      }
    }
    return d(tau).mul_pow2(-static_cast<long>(n)) + banked;
  };
  std::string tag = quadrupling ? "quad" : "dbl";
  Martingale out = Martingale::from_function("savings-" + tag + "(" + d.name() + ")", eval);
  LengthSchedule witness =
      quadrupling
          ? LengthSchedule::from_function("savings-quad(" + f.label() + ")",
                                          [f](std::size_t n) { return f(2 * n); })
          : LengthSchedule::from_function("savings-dbl(" + f.label() + ")", [f](std::size_t n) {
              return f((std::size_t{1} << (n + 1)));
            });
  return SavingsResult{out.with_witness(witness), witness};
}

namespace {

/// Shared state of the product construction: per block root (a word at a
/// stage boundary), the sorted list of boosted relative extensions.
struct ProductState {
  BoundedTest test;
  std::size_t depth;
  std::vector<std::size_t> levels;  // L_0 < ... < L_depth
  std::mutex mutex;
  std::map<std::string, std::vector<BitString>> boosted;  // root -> relative suffixes
};

const std::vector<BitString>* boosted_for(ProductState& st, const BitString& root,
                                          std::size_t j) {
  // Block from L_j to L_{j+1} below `root`; null when the block is flat
  // (root not a generator, or no extensions to boost).
  std::string key = root.str();
  {
    std::lock_guard<std::mutex> lock(st.mutex);
    auto it = st.boosted.find(key);
    if (it != st.boosted.end()) return it->second.empty() ? nullptr : &it->second;
  }
  std::vector<BitString> rel;
  if (st.test.stage(j).set().member(root)) {
    std::size_t gap = st.levels[j + 1] - st.levels[j];
    const auto& next_gens = st.test.stage(j + 1).set().generators();
    for (const auto& g : next_gens) {
      if (root.is_prefix_of(g)) rel.push_back(g.suffix_from(root.size()));
    }
    std::size_t half = std::size_t{1} << (gap - 1);
    if (rel.size() > half) {
      throw TestInvariantViolation(
          "martingale_from_test: weak inequality fails inside block " + root.str());
    }
    if (!rel.empty() && rel.size() < half) {
      // Pad with the lexicographically first absent extensions.
      ClopenSet present(gap, rel);
      for (auto& w : present.absent_lex_first(half - rel.size())) rel.push_back(std::move(w));
      std::sort(rel.begin(), rel.end());
    }
  }
  std::lock_guard<std::mutex> lock(st.mutex);
  auto [it, inserted] = st.boosted.emplace(std::move(key), std::move(rel));
  return it->second.empty() ? nullptr : &it->second;
}

DyadicRational product_eval(ProductState& st, const BitString& sigma);

/// Value at a stage boundary L_j, by the chain of block boosts.
DyadicRational boundary_value(ProductState& st, const BitString& sigma, std::size_t j) {
  if (j == 0) return DyadicRational::one();
  BitString root = sigma.prefix(st.levels[j - 1]);
  DyadicRational base = boundary_value(st, root, j - 1);
  if (base.is_zero()) return base;
  const auto* boosted = boosted_for(st, root, j - 1);
  if (boosted == nullptr) return base;  // flat block
  BitString rel = sigma.suffix_from(root.size());
  bool in = std::binary_search(boosted->begin(), boosted->end(), rel);
  return in ? base.twice() : DyadicRational::zero();
}

DyadicRational product_eval(ProductState& st, const BitString& sigma) {
  std::size_t top = st.levels[st.depth];
  if (sigma.size() >= top) {
    return boundary_value(st, sigma.prefix(top), st.depth);
  }
  if (sigma.size() <= st.levels[0]) {
    return DyadicRational::one();
  }
  // Inside block j -> j+1: average the boosted indicator over completions.
  std::size_t j = 0;
  while (st.levels[j + 1] < sigma.size()) ++j;
  if (st.levels[j + 1] == sigma.size()) return boundary_value(st, sigma, j + 1);
  BitString root = sigma.prefix(st.levels[j]);
  DyadicRational base = boundary_value(st, root, j);
  if (base.is_zero()) return base;
  const auto* boosted = boosted_for(st, root, j);
  if (boosted == nullptr) return base;
  BitString rel = sigma.suffix_from(root.size());
  std::size_t gap = st.levels[j + 1] - st.levels[j];
  auto lo = std::lower_bound(boosted->begin(), boosted->end(), rel,
                             [](const BitString& g, const BitString& key) { return g < key; });
  cpp_int cnt = 0;
  for (auto it = lo; it != boosted->end() && rel.is_prefix_of(*it); ++it) ++cnt;
  // m(rel) = 2 * cnt / 2^{gap - |rel|}
  return base * DyadicRational::scaled(cnt * 2, gap - rel.size());
}

}  // namespace

Martingale martingale_from_test(const BoundedTest& t, std::size_t depth) {
  if (auto v = find_weak_violation(t, depth)) {
    throw std::invalid_argument("martingale_from_test: input is not weak at stage " +
                                std::to_string(v->n) + ", generator " + v->tau.str() + " (" +
                                v->lhs.str() + " > " + v->rhs.str() + ")");
  }
  if (!is_nested(t, depth)) {
    throw std::invalid_argument(
        "martingale_from_test: input stages are not nested; the product construction needs "
        "U_{n+1} inside U_n");
  }
  auto st = std::make_shared<ProductState>();
  st->test = t;
  st->depth = depth;
  for (std::size_t n = 0; n <= depth; ++n) st->levels.push_back(t.schedule()(n));
  auto eval = [st](const BitString& sigma) { return product_eval(*st, sigma); };
  Martingale out = Martingale::from_function("from-test(" + t.name() + ")", eval);
  return out.with_witness(t.schedule());
}

BoundedTest test_from_martingale(const Martingale& d, const LengthSchedule& f,
                                 std::size_t enumeration_cap) {
  auto rule = [d, f, enumeration_cap](std::size_t n) {
    std::size_t level = f(n);
    if (level > enumeration_cap) {
      throw std::invalid_argument("test_from_martingale: level too large to enumerate");
    }
    DyadicRational bar = DyadicRational::pow2(static_cast<long>(n));
    std::vector<BitString> gens;
    BitString w = BitString::zeros(level);
    do {
      if (d(w) >= bar) gens.push_back(w);
    } while (w.next_same_length());
    return Stage(ClopenSet(level, std::move(gens)));
  };
  return BoundedTest(f, rule, false, std::nullopt, "threshold(" + d.name() + ")");
}

namespace {

/// Prefix-minimal words within length bound whose capital first reaches bar.
std::vector<BitString> minimal_hits(const Martingale& d, const DyadicRational& bar,
                                    std::size_t len_bound) {
  std::vector<BitString> out;
  std::vector<BitString> frontier{BitString()};
  for (std::size_t len = 0; len <= len_bound; ++len) {
    std::vector<BitString> next;
    for (auto& sigma : frontier) {
      if (d(sigma) >= bar) {
        out.push_back(sigma);
        continue;
      }
      if (len < len_bound) {
        BitString s0 = sigma, s1 = std::move(sigma);
        s0.push_back(0);
        s1.push_back(1);
        next.push_back(std::move(s0));
        next.push_back(std::move(s1));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

FirstHittingResult first_hitting_test(const Martingale& d, const LengthSchedule& f,
                                      std::size_t depth) {
  FirstHittingResult result;
  std::vector<Stage> stages;
  std::size_t prev_level = 0;
  for (std::size_t n = 0; n <= depth; ++n) {
    auto hits = minimal_hits(d, DyadicRational::pow2(static_cast<long>(2 * n)), f(2 * n));
    ClopenSet set = ClopenSet::from_mixed(hits);
    std::size_t level = std::max(set.level(), n);
    if (n > 0) level = std::max(level, prev_level + 1);
    set = set.refined(level);
    prev_level = level;
    stages.push_back(Stage(std::move(set)));
    result.hit_sets.push_back(std::move(hits));
  }

  auto half_bound_ok = [&stages](std::size_t n, const std::vector<BitString>& gens) {
    const ClopenSet& next = stages[n + 1].set();
    for (const auto& tau : gens) {
      if (next.measure_within(tau) > DyadicRational::pow2(-static_cast<long>(tau.size())).half()) {
        return false;
      }
    }
    return true;
  };
  result.antichain_weak = true;
  result.refined_weak = true;
  for (std::size_t n = 0; n + 1 <= depth; ++n) {
    result.antichain_weak = result.antichain_weak && half_bound_ok(n, result.hit_sets[n]);
    result.refined_weak = result.refined_weak && half_bound_ok(n, stages[n].set().generators());
  }
  result.test = BoundedTest::from_stages(std::move(stages), result.refined_weak,
                                         "first-hit(" + d.name() + ")");
  return result;
}

SummedMartingaleResult summed_martingale_from_test(const BoundedTest& t, std::size_t depth) {
  struct State {
    BoundedTest test;
    std::size_t depth;
    std::vector<std::size_t> levels;  // levels[i] = l(3i-1), i >= 1
    std::mutex mutex;
    std::map<std::string, std::vector<BitString>> boosted;  // per (i, block root)
  };
  auto st = std::make_shared<State>();
  st->test = t;
  st->depth = depth;
  st->levels.push_back(0);
  for (std::size_t i = 1; i <= depth; ++i) {
    std::size_t idx = 3 * i - 1;
    std::size_t level = t.schedule()(idx);
    if (level < idx) {
      throw std::invalid_argument("summed_martingale_from_test: schedule level below stage index");
    }
    if (level + 1 < 3 * i) {
      throw std::invalid_argument("summed_martingale_from_test: level l(3i-1) < 3i-1");
    }
    st->levels.push_back(level);
  }

  // Boosted set of component i inside the block of a length-(i-1) root:
  // stage(3i-1) generators under the root, padded with the lexicographically
  // first absent extensions to exactly 2^{l - (3i-1)} words.
  auto boosted_of = [st](std::size_t i, const BitString& root) -> const std::vector<BitString>& {
    std::string key = std::to_string(i) + ":" + root.str();
    {
      std::lock_guard<std::mutex> lock(st->mutex);
      auto it = st->boosted.find(key);
      if (it != st->boosted.end()) return it->second;
    }
    std::size_t level = st->levels[i];
    const ClopenSet& g = st->test.stage(3 * i - 1).set();
    std::vector<BitString> members;
    for (const auto& w : g.generators()) {
      if (root.is_prefix_of(w)) members.push_back(w);
    }
    cpp_int target = cpp_int(1) << (level - (3 * i - 1));
    cpp_int have(static_cast<unsigned long>(members.size()));
    if (have > target) {
      throw TestInvariantViolation(
          "summed_martingale_from_test: stage mass in block exceeds 2^{l-3i+1} at root " +
          root.str());
    }
    // Lexicographically first extensions of root (at stage level) absent
    // from the generator list.
    std::size_t need = (target - have).convert_to<std::size_t>();
    BitString tail = BitString::zeros(level - root.size());
    while (need > 0) {
      BitString candidate = root + tail;
      if (!g.member(candidate)) {
        members.push_back(candidate);
        --need;
      }
      if (!tail.next_same_length() && need > 0) {
        throw std::logic_error("summed_martingale_from_test: ran out of pad candidates");
      }
    }
    std::sort(members.begin(), members.end());
    std::lock_guard<std::mutex> lock(st->mutex);
    auto [it, inserted] = st->boosted.emplace(std::move(key), std::move(members));
    return it->second;
  };

  auto component = [st, boosted_of](std::size_t i, const BitString& sigma) -> DyadicRational {
    if (i < 1 || i > st->depth) {
      throw std::out_of_range("summed martingale component index");
    }
    if (sigma.size() + 1 <= i) return DyadicRational::one();
    std::size_t level = st->levels[i];
    BitString root = sigma.prefix(i - 1);
    const auto& boosted = boosted_of(i, root);
    BitString probe = sigma.size() > level ? sigma.prefix(level) : sigma;
    auto lo = std::lower_bound(boosted.begin(), boosted.end(), probe);
    cpp_int cnt = 0;
    for (auto it = lo; it != boosted.end() && probe.is_prefix_of(*it); ++it) ++cnt;
    // d_i(sigma) = count * 2^{2i} * 2^{|probe| - l}
    return DyadicRational::scaled(cnt, 0).mul_pow2(static_cast<long>(2 * i) +
                                                   static_cast<long>(probe.size()) -
                                                   static_cast<long>(level));
  };

  auto eval = [st, component](const BitString& sigma) {
    std::size_t cut = std::min(sigma.size(), st->depth);
    DyadicRational acc = DyadicRational::pow2(-static_cast<long>(cut));  // closed-form tail
    for (std::size_t i = 1; i <= cut; ++i) {
      acc += component(i, sigma).mul_pow2(-static_cast<long>(i));
    }
    return acc;
  };

  SummedMartingaleResult out;
  // Witness: d(X restricted to l(3(n+1)-1)) >= 2^{n+1} >= 2^n on failing X.
  auto witness = LengthSchedule::from_function("summed-witness", [st](std::size_t n) {
    if (n + 1 > st->depth) {
      throw std::out_of_range("summed martingale witness beyond built depth");
    }
    return st->levels[n + 1];
  });
  out.d = Martingale::from_function("summed(" + t.name() + ")", eval).with_witness(witness);
  out.depth = depth;
  out.component = component;
  return out;
}

}  // namespace brt
