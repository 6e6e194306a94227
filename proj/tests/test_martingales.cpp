#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brt/martingale_ops.hpp"
#include "support.hpp"

using namespace brt;

namespace {

/// All maximal antichains of the depth-`d` subtree under `root`.
void maximal_antichains(const BitString& root, std::size_t d,
                        std::vector<std::vector<BitString>>& out) {
  if (d == 0) {
    out.push_back({root});
    return;
  }
  out.push_back({root});
  BitString r0 = root, r1 = root;
  r0.push_back(0);
  r1.push_back(1);
  std::vector<std::vector<BitString>> left, right;
  maximal_antichains(r0, d - 1, left);
  maximal_antichains(r1, d - 1, right);
  for (const auto& l : left) {
    for (const auto& r : right) {
      std::vector<BitString> merged = l;
      merged.insert(merged.end(), r.begin(), r.end());
      out.push_back(std::move(merged));
    }
  }
}

}  // namespace

TEST_CASE("check_martingale on the basic strategies") {
  CHECK(check_martingale(Martingale::uniform(), 8).valid);

  Martingale allin = Martingale::all_in_path(SequencePrefix::constant(0));
  CHECK(check_martingale(allin, 8).valid);
  CHECK(allin(BitString::parse("0")) == DyadicRational(cpp_int(2)));
  CHECK(allin(BitString::parse("1")) == DyadicRational::zero());
  CHECK(allin(BitString::parse("0000")) == DyadicRational(cpp_int(16)));

  testing::Rng rng(31);
  for (int i = 0; i < 5; ++i) {
    Martingale d = testing::random_martingale(rng, 6);
    CHECK(check_martingale(d, 8).valid);  // constant beyond the leaf depth
  }

  // A broken table is caught with the offending word and both sides.
  auto broken = Martingale::from_function("broken", [](const BitString& s) {
    return s.str() == "01" ? DyadicRational(cpp_int(5)) : DyadicRational::one();
  });
  MartingaleReport r = check_martingale(broken, 3);
  CHECK(!r.valid);
  CHECK(r.reason == "law");
  CHECK(r.sigma.str() == "0");
  CHECK(r.lhs == DyadicRational::one());
  CHECK(r.rhs == DyadicRational(cpp_int(3)));

  auto badroot = Martingale::from_function(
      "badroot", [](const BitString&) { return DyadicRational(cpp_int(2)); });
  CHECK(check_martingale(badroot, 1).reason == "root");
}

TEST_CASE("kraft: equalities, inequalities, bad input") {
  Martingale u = Martingale::uniform();
  BitString sigma = BitString::parse("01");
  BitString s0 = sigma, s1 = sigma;
  s0.push_back(0);
  s1.push_back(1);
  CHECK(kraft_compare(u, sigma, {s0, s1}) == 0);  // children: equality
  CHECK(kraft_compare(u, sigma, {sigma}) == 0);   // reflexive: equality
  CHECK(kraft_compare(u, sigma, {s0}) < 0);       // strict
  CHECK_THROWS_AS(kraft_compare(u, sigma, {BitString::parse("10")}), std::invalid_argument);
  CHECK_THROWS_AS(kraft_compare(u, sigma, {s0, s0}), std::invalid_argument);

  // Exhaustive maximal antichains of depth-4 subtrees under every short
  // root, over a random valid martingale.
  testing::Rng rng(77);
  Martingale d = testing::random_martingale(rng, 7);
  for (std::size_t rootlen = 0; rootlen <= 2; ++rootlen) {
    BitString root = BitString::zeros(rootlen);
    do {
      std::vector<std::vector<BitString>> families;
      maximal_antichains(root, 4, families);
      CHECK(families.size() == 677);
      for (const auto& h : families) {
        CHECK(kraft_check(d, root, h));
      }
    } while (root.next_same_length());
  }
}

TEST_CASE("savings transform: trivial and all-in examples") {
  LengthSchedule f = LengthSchedule::identity();

  // Capital never reaches 2: the transform is the identity.
  auto [same, wd] = savings_transform(Martingale::uniform(), f, false);
  for (std::size_t len = 0; len <= 5; ++len) {
    BitString w = BitString::zeros(len);
    do {
      CHECK(same(w) == DyadicRational::one());
    } while (w.next_same_length());
  }

  // All-in on zeros: d(0^k) = 2^k crosses a threshold at every step, so
  // the transform banks one unit each time: d'(0^k) = k + 1.
  Martingale allin = Martingale::all_in_path(SequencePrefix::constant(0));
  auto [dd, wit] = savings_transform(allin, f, false);
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(savings_crossings(allin, BitString::zeros(k), false) == k);
    CHECK(dd(BitString::zeros(k)) == DyadicRational(cpp_int(static_cast<long>(k + 1))));
  }
  // Off the path the working capital is dead but the bank persists.
  CHECK(dd(BitString::parse("001")) == DyadicRational(cpp_int(2)));

  // Both transforms stay valid martingales on random inputs.
  testing::Rng rng(8);
  for (int i = 0; i < 4; ++i) {
    BitString plant = testing::random_word(rng, 10);
    Martingale d = testing::random_martingale(rng, 10, &plant);
    CHECK(check_martingale(savings_transform(d, f, false).transformed, 10).valid);
    CHECK(check_martingale(savings_transform(d, f, true).transformed, 10).valid);
  }
}

TEST_CASE("savings transform: persistence bounds") {
  testing::Rng rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    BitString plant = testing::random_word(rng, 12);
    Martingale d = testing::random_martingale(rng, 12, &plant);
    Martingale quad = savings_transform(d, LengthSchedule::identity(), true).transformed;
    Martingale dbl = savings_transform(d, LengthSchedule::identity(), false).transformed;
    BitString x = BitString::zeros(12);
    do {
      DyadicRational best;
      for (std::size_t m = 0; m <= x.size(); ++m) {
        DyadicRational v = d(x.prefix(m));
        if (v > best) best = v;
        // Quadrupling: capital 4^n reached implies banked value >= 2^{n-1}
        // from then on (n >= 1).
        for (std::size_t n = 1; n <= 6; ++n) {
          if (best >= DyadicRational::pow2(2 * static_cast<long>(n))) {
            CHECK(quad(x.prefix(m)) >= DyadicRational::pow2(static_cast<long>(n) - 1));
          }
        }
        // Doubling: capital 2^{2^{n+1}} reached implies value >= 2^n.
        for (std::size_t n = 0; n <= 2; ++n) {
          long bar = 1l << (n + 1);
          if (best >= DyadicRational::pow2(bar)) {
            CHECK(dbl(x.prefix(m)) >= DyadicRational::pow2(static_cast<long>(n)));
          }
        }
      }
    } while (x.next_same_length() && (rng() % 16 != 0));  // sampled walk
  }
}

TEST_CASE("martingale_from_test: the half-space example") {
  std::vector<Stage> stages;
  stages.push_back(Stage(ClopenSet(0, {BitString()})));
  stages.push_back(Stage(ClopenSet(1, {BitString::parse("0")})));
  BoundedTest t = BoundedTest::from_stages(std::move(stages), true, "half");
  Martingale d = martingale_from_test(t, 1);
  CHECK(d(BitString()) == DyadicRational::one());
  CHECK(d(BitString::parse("0")) == DyadicRational(cpp_int(2)));
  CHECK(d(BitString::parse("1")) == DyadicRational::zero());
  CHECK(check_martingale(d, 6).valid);
}

TEST_CASE("martingale_from_test: blocks without next-stage extensions stay flat") {
  // Stage 0 has two generators; only one of them carries stage-1 mass.
  std::vector<Stage> stages;
  stages.push_back(Stage(ClopenSet(2, {BitString::parse("00"), BitString::parse("11")})));
  stages.push_back(Stage(ClopenSet(4, {BitString::parse("0000")})));
  BoundedTest t = BoundedTest::from_stages(std::move(stages), true, "lopsided");
  Martingale d = martingale_from_test(t, 1);
  CHECK(check_martingale(d, 6).valid);
  CHECK(d(BitString::parse("0000")) == DyadicRational(cpp_int(2)));
  CHECK(d(BitString::parse("0001")) == DyadicRational(cpp_int(2)));  // block pad
  CHECK(d(BitString::parse("0010")) == DyadicRational::zero());
  CHECK(d(BitString::parse("1111")) == DyadicRational::one());  // flat block
  CHECK(d(BitString::parse("0111")) == DyadicRational::one());  // outside stage 0

  // Success triple on the surviving point.
  CHECK(!success_failure(d, t.schedule(), SequencePrefix::constant(0), 1).has_value());
  CHECK(success_failure(d, t.schedule(), SequencePrefix::constant(1), 1) == 1);
}

TEST_CASE("martingale_from_test: weakened immunity, capital on generators") {
  BoundedTest weak = weaken(immunity_test(LengthSchedule::identity_plus(1)), 3).test;
  Martingale d = martingale_from_test(weak, 3);
  CHECK(d(BitString()) == DyadicRational::one());
  CHECK(check_martingale(d, 9).valid);
  for (std::size_t n = 0; n <= 3; ++n) {
    DyadicRational bar = DyadicRational::pow2(static_cast<long>(n));
    for (const auto& tau : weak.stage(n).set().generators()) {
      CHECK(d(tau) >= bar);
    }
  }

  // Refusal on non-weak input.
  std::vector<Stage> notweak;
  notweak.push_back(Stage(ClopenSet(1, {BitString::parse("0")})));
  notweak.push_back(Stage(ClopenSet(2, {BitString::parse("00"), BitString::parse("01")})));
  BoundedTest bad = BoundedTest::from_stages(std::move(notweak), true, "notweak");
  CHECK_THROWS_AS(martingale_from_test(bad, 1), std::invalid_argument);

  // Refusal on weak but non-nested input.
  std::vector<Stage> nonnested;
  nonnested.push_back(Stage(ClopenSet(1, {BitString::parse("0")})));
  nonnested.push_back(Stage(ClopenSet(2, {BitString::parse("11")})));
  BoundedTest bad2 = BoundedTest::from_stages(std::move(nonnested), true, "nonnested");
  CHECK_THROWS_AS(martingale_from_test(bad2, 1), std::invalid_argument);
}

TEST_CASE("test_from_martingale: trivial, all-in, and membership") {
  BoundedTest empty = test_from_martingale(Martingale::uniform(), LengthSchedule::identity());
  for (std::size_t n = 1; n <= 4; ++n) CHECK(empty.stage(n).count() == 0);

  Martingale allin = Martingale::all_in_path(SequencePrefix::constant(0));
  BoundedTest zeros = test_from_martingale(allin, LengthSchedule::identity());
  for (std::size_t n = 0; n <= 5; ++n) {
    REQUIRE(zeros.stage(n).count() == 1);
    CHECK(zeros.stage(n).set().generators()[0] == BitString::zeros(n));
    CHECK(zeros.stage(n).measure() == DyadicRational::pow2(-static_cast<long>(n)));
  }

  // Membership is exactly the capital threshold, and the measure bound
  // holds exactly (the stage accessor enforces it).
  testing::Rng rng(55);
  LengthSchedule f = LengthSchedule::identity_plus(3);
  for (int trial = 0; trial < 4; ++trial) {
    BitString plant = testing::random_word(rng, 9);
    Martingale d = testing::random_martingale(rng, 9, &plant);
    BoundedTest t = test_from_martingale(d, f);
    for (std::size_t n = 0; n <= 4; ++n) {
      Stage s = t.stage(n);
      BitString w = BitString::zeros(f(n));
      do {
        CHECK(s.member(w) == (d(w) >= DyadicRational::pow2(static_cast<long>(n))));
      } while (w.next_same_length());
    }
  }
}

TEST_CASE("first_hitting_test: trivial, all-in, planted") {
  LengthSchedule f = LengthSchedule::identity_plus(2);
  FirstHittingResult trivial = first_hitting_test(Martingale::uniform(), f, 3);
  CHECK(trivial.test.stage(0).count() == 1);  // the empty word hits 2^0 at once
  for (std::size_t n = 1; n <= 3; ++n) CHECK(trivial.test.stage(n).count() == 0);
  CHECK(trivial.antichain_weak);
  CHECK(trivial.refined_weak);

  Martingale allin = Martingale::all_in_path(SequencePrefix::constant(0));
  FirstHittingResult fh = first_hitting_test(allin, LengthSchedule::affine(2, 0), 2);
  CHECK(fh.hit_sets[1] == std::vector<BitString>{BitString::zeros(2)});
  CHECK(fh.hit_sets[2] == std::vector<BitString>{BitString::zeros(4)});
  CHECK(fh.antichain_weak);
  CHECK(fh.refined_weak);
  CHECK(fh.test.weak_claim());

  testing::Rng rng(66);
  for (int trial = 0; trial < 5; ++trial) {
    BitString plant = testing::random_word(rng, 12);
    Martingale d = testing::random_martingale(rng, 12, &plant);
    FirstHittingResult r = first_hitting_test(d, LengthSchedule::affine(2, 0), 3);
    CHECK(r.antichain_weak);  // guaranteed by the Kraft argument
    for (const auto& hits : r.hit_sets) {
      for (std::size_t i = 0; i < hits.size(); ++i) {
        for (std::size_t j = i + 1; j < hits.size(); ++j) {
          CHECK(!hits[i].compatible_with(hits[j]));
        }
      }
    }
  }
}

TEST_CASE("summed martingale from a test") {
  // All-empty stages: only the padding mass, d stays valid.
  std::vector<Stage> empties;
  for (std::size_t n = 0; n <= 9; ++n) empties.push_back(Stage(ClopenSet(n)));
  BoundedTest t0 = BoundedTest::from_stages(std::move(empties), false, "empty");
  SummedMartingaleResult s0 = summed_martingale_from_test(t0, 3);
  CHECK(check_martingale(s0.d, 8).valid);

  // Normalized immunity: the i = 1 component pays 2 on stage-2 points.
  BoundedTest imm = normalize_to_exact(immunity_test(LengthSchedule::identity_plus(1)), 9);
  SummedMartingaleResult s1 = summed_martingale_from_test(imm, 3);
  CHECK(check_martingale(s1.d, 8).valid);
  BitString ones = SequencePrefix::constant(1).prefix(imm.schedule()(2));
  CHECK(s1.d(ones) >= DyadicRational(cpp_int(2)));

  // Success along every failing point, for i <= 3.
  ClopenSet failing = failing_prefixes(imm, 3 * 3 - 1);
  for (const auto& x : failing.generators()) {
    for (std::size_t i = 1; i <= 3; ++i) {
      CHECK(s1.d(x.prefix(imm.schedule()(3 * i - 1))) >=
            DyadicRational::pow2(static_cast<long>(i)));
    }
  }

  // Closed-form tail equals direct truncated summation with the exact tail.
  testing::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    BitString sigma = testing::random_word(rng, rng() % 9);
    std::size_t cut = std::min<std::size_t>(sigma.size(), 3);
    DyadicRational direct = DyadicRational::pow2(-static_cast<long>(cut));
    for (std::size_t i = 1; i <= cut; ++i) {
      direct += s1.component(i, sigma).mul_pow2(-static_cast<long>(i));
    }
    CHECK(direct == s1.d(sigma));
    // Partial sums lower-bound the value (remainder is nonnegative).
    if (cut > 1) {
      DyadicRational partial;
      for (std::size_t i = 1; i < cut; ++i) {
        partial += s1.component(i, sigma).mul_pow2(-static_cast<long>(i));
      }
      CHECK(partial <= s1.d(sigma));
    }
  }
}
