#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <random>

#include "brt/bounded_test.hpp"
#include "brt/martingale.hpp"
#include "brt/test_ops.hpp"

namespace brt::testing {

using Rng = std::mt19937_64;

inline BitString random_word(Rng& rng, std::size_t len) {
  BitString out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(static_cast<int>(rng() & 1));
  return out;
}

/// Random clopen set at `level` with at most max_count distinct generators.
inline ClopenSet random_clopen(Rng& rng, std::size_t level, std::size_t max_count) {
  std::set<BitString> gens;
  std::size_t want = max_count == 0 ? 0 : rng() % (max_count + 1);
  std::size_t total = level < 63 ? (std::size_t{1} << level) : ~std::size_t{0};
  want = std::min(want, total);
  while (gens.size() < want) gens.insert(random_word(rng, level));
  return ClopenSet(level, std::vector<BitString>(gens.begin(), gens.end()));
}

/// Random explicit test with levels from `schedule` and stage counts within
/// the 2^{l(n)-n} bound.
inline BoundedTest random_test(Rng& rng, const LengthSchedule& schedule, std::size_t depth) {
  std::vector<Stage> stages;
  for (std::size_t n = 0; n <= depth; ++n) {
    std::size_t level = schedule(n);
    std::size_t cap = std::size_t{1} << (level - n);
    stages.push_back(Stage(random_clopen(rng, level, cap)));
  }
  return BoundedTest::from_stages(std::move(stages), false, "random");
}

/// Random exact-dyadic martingale given by leaf values at `depth`: mass
/// splits at each node by a random dyadic ratio k/64.  When `plant` is
/// given, capital instead doubles along that word for its whole length.
inline Martingale random_martingale(Rng& rng, std::size_t depth,
                                    const BitString* plant = nullptr,
                                    std::string name = "random") {
  auto values = std::make_shared<std::map<std::string, DyadicRational>>();
  (*values)[""] = DyadicRational::one();
  std::vector<BitString> frontier{BitString()};
  for (std::size_t len = 0; len < depth; ++len) {
    std::vector<BitString> next;
    for (const auto& sigma : frontier) {
      DyadicRational v = values->at(sigma.str());
      BitString s0 = sigma, s1 = sigma;
      s0.push_back(0);
      s1.push_back(1);
      DyadicRational left;
      if (plant && len < plant->size() && sigma.is_prefix_of(*plant)) {
        // All-in on the planted branch.
        left = plant->bit(len) == 0 ? v.twice() : DyadicRational::zero();
      } else {
        std::size_t k = rng() % 65;
        left = v.twice() * DyadicRational::scaled(cpp_int(static_cast<unsigned long>(k)), 6);
      }
      (*values)[s0.str()] = left;
      (*values)[s1.str()] = v.twice() - left;
      next.push_back(std::move(s0));
      next.push_back(std::move(s1));
    }
    frontier = std::move(next);
  }
  auto leaf = [values, depth](const BitString& w) { return values->at(w.str()); };
  return Martingale::from_leaf_values(depth, leaf, std::move(name));
}

/// Independent fraction mirror for exactness checks.
using Fraction = boost::multiprecision::cpp_rational;

inline Fraction to_fraction(const DyadicRational& d) {
  Fraction den = 1;
  for (std::size_t i = 0; i < d.exponent(); ++i) den *= 2;
  return Fraction(d.numerator()) / den;
}

}  // namespace brt::testing
