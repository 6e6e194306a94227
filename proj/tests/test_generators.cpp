#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brt/generators.hpp"
#include "brt/machine_ops.hpp"
#include "support.hpp"

using namespace brt;

namespace {

RegistryEntry entry(const std::string& name, const std::string& text, std::size_t plus) {
  return RegistryEntry{name,
                       std::make_shared<DslProgram>(DslProgram::parse(text, name)),
                       LengthSchedule::identity_plus(plus)};
}

Registry small_registry() {
  Registry r;
  r.push_back(entry("id", "", 2));
  r.push_back(entry("dbl", "dup\ncat", 3));
  r.push_back(entry("app1", "append1", 2));
  r.push_back(entry("len", "len", 4));
  r.push_back(entry("tag", "append0\nappend1", 3));
  return r;
}

}  // namespace

TEST_CASE("diagonal_real: identity registry example") {
  Registry r;
  r.push_back(entry("id", "", 2));
  DiagonalResult d = diagonal_real(r, 8);
  // Stage 1: c = 0, target length 2; the identity's images of length <= 1
  // never have length 2, so the lexicographically first candidate wins.
  REQUIRE(d.log.size() == 1);
  CHECK(d.log[0].c == 0);
  CHECK(d.log[0].target_len == 2);
  CHECK(d.log[0].chosen.str() == "00");
  CHECK(d.bits.size() == 8);
  CHECK(d.bits.str() == "00000000");
}

TEST_CASE("diagonal_real: empty registry and zero padding") {
  DiagonalResult d = diagonal_real({}, 5);
  CHECK(d.bits.str() == "00000");
  CHECK(d.log.empty());
}

TEST_CASE("diagonal_real: every entry is defeated at its witnessed stage") {
  Registry r = small_registry();
  DiagonalResult d = diagonal_real(r, 64);
  SequencePrefix x = SequencePrefix::zero_padded(d.bits);
  REQUIRE(d.log.size() == r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const DiagonalStage& st = d.log[k];
    std::size_t c = st.c;
    std::size_t fc = st.target_len;
    CHECK(fc == r[k].f(c));
    // Strict form: no description of length <= f(c) - c - 1 produces the
    // prefix, checked by exhaustive search.
    ComplexityReport cr = plain_complexity(*r[k].machine, x.prefix(fc), fc - c - 1);
    CHECK(cr.infinite());
  }
}

TEST_CASE("diagonal_real: deterministic across runs") {
  Registry r = small_registry();
  DiagonalResult a = diagonal_real(r, 128);
  DiagonalResult b = diagonal_real(r, 128);
  CHECK(a.bits == b.bits);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].chosen == b.log[i].chosen);
  }
}

TEST_CASE("diagonal_real: budget violations abort with the offending entry") {
  Registry r;
  RunLimits tiny;
  tiny.steps = 2;
  r.push_back(RegistryEntry{"burner",
                            std::make_shared<DslProgram>(DslProgram::parse(
                                "loop 50\nappend1\nendloop", "burner", tiny)),
                            LengthSchedule::identity_plus(2)});
  CHECK_THROWS_WITH_AS(diagonal_real(r, 8),
                       doctest::Contains("burner"), GeneratorError);
}

TEST_CASE("stage consistency invariants") {
  Registry r = small_registry();
  DiagonalResult d = diagonal_real(r, 16);
  std::size_t prev_end = 0;
  for (const auto& st : d.log) {
    CHECK(st.c == prev_end);             // stages chain: c = |previous prefix|
    CHECK(st.target_len == st.chosen.size());
    CHECK(st.chosen.prefix(st.c) == d.bits.prefix(st.c));
    prev_end = st.target_len;
  }
}

TEST_CASE("oscillating_real: density dips and diagonal guarantees") {
  Registry r = small_registry();
  std::vector<OscillationBlocks> dips{{0, 0}, {0, 0}};  // auto-sized, 2 alternations
  OscillatingResult o = oscillating_real(r, dips, 1 << 12);
  CHECK(o.bits.size() == std::size_t{1} << 12);
  REQUIRE(o.checkpoints.size() == 4);

  SequencePrefix x = SequencePrefix::zero_padded(o.bits);
  auto rows = density_report(x, {o.checkpoints[0].position, o.checkpoints[1].position,
                                 o.checkpoints[2].position, o.checkpoints[3].position});
  CHECK(o.checkpoints[0].low);
  CHECK(rows[0].below_quarter());
  CHECK(!o.checkpoints[1].low);
  CHECK(rows[1].above_three_quarters());
  CHECK(rows[2].below_quarter());
  CHECK(rows[3].above_three_quarters());

  // The interleaved blocks do not disturb the per-stage witnesses.
  for (std::size_t k = 0; k < o.log.size(); ++k) {
    const DiagonalStage& st = o.log[k];
    ComplexityReport cr =
        plain_complexity(*r[k].machine, x.prefix(st.target_len), st.target_len - st.c - 1);
    CHECK(cr.infinite());
  }
}

TEST_CASE("join and density basics") {
  CHECK(join_sequences(BitString::parse("00"), BitString::parse("11")).str() == "0101");
  CHECK(join_sequences(BitString(), BitString()).empty());

  testing::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    BitString a = testing::random_word(rng, 9);
    BitString b = testing::random_word(rng, 9);
    auto [a2, b2] = deinterleave(join_sequences(a, b));
    CHECK(a2 == a);
    CHECK(b2 == b);
  }

  auto rows = density_report(SequencePrefix::periodic(BitString::parse("01")), {10});
  CHECK(rows[0].ones == 5);
  CHECK(rows[0].within(0, 1));  // exactly one half
  auto ones = density_report(SequencePrefix::constant(1), {10});
  CHECK(ones[0].ones == 10);
  CHECK(!ones[0].within(1, 4));
}

TEST_CASE("counterexample pair: oracle-ignoring registry") {
  Registry r;
  r.push_back(entry("id", "", 3));
  CounterexampleResult ce = counterexample_pair(r, 2);
  REQUIRE(ce.h.size() == 5);
  CHECK(ce.h[0] == 0);
  for (std::size_t i = 1; i < ce.h.size(); ++i) CHECK(ce.h[i] > ce.h[i - 1]);
  CHECK(ce.a.size() == ce.h.back());
  CHECK(ce.b.size() == ce.h.back());

  // Block structure: B zero on even blocks, A zero on odd blocks.
  for (std::size_t j = 0; 2 * j + 1 < ce.h.size(); ++j) {
    for (std::size_t n = ce.h[2 * j]; n < ce.h[2 * j + 1]; ++n) {
      CHECK(ce.b.bit(n) == 0);
    }
    if (2 * j + 2 < ce.h.size()) {
      for (std::size_t n = ce.h[2 * j + 1]; n < ce.h[2 * j + 2]; ++n) {
        CHECK(ce.a.bit(n) == 0);
      }
    }
  }
}

TEST_CASE("counterexample pair: oracle machines, witnesses, zero-block test") {
  Registry r;
  // Echoes three oracle bits: genuinely consults the oracle.
  r.push_back(RegistryEntry{"oracle-echo",
                            std::make_shared<DslProgram>(DslProgram::parse(
                                "drop\noracle 0\noracle 1\noracle 2\ncat\ncat", "oracle-echo")),
                            LengthSchedule::identity_plus(3)});
  r.push_back(entry("dbl", "dup\ncat", 4));
  CounterexampleResult ce = counterexample_pair(r, 2);

  // Each witness: the protected real avoids every oracle-machine image of
  // description length <= f(c) - c, with the other real as the oracle.
  for (const auto& w : ce.witnesses) {
    const RegistryEntry& e = r[w.j % r.size()];
    const BitString& target_seq = w.protects_a ? ce.a : ce.b;
    const BitString& oracle_bits = w.protects_a ? ce.b : ce.a;
    SequencePrefix oracle = SequencePrefix::zero_padded(oracle_bits);
    ComplexityReport cr = plain_complexity(*e.machine, target_seq.prefix(w.target_len),
                                           w.target_len - w.c, &oracle);
    CHECK(cr.infinite());
  }

  // The join fails the explicit zero-block test through the built stages.
  BoundedTest zb = zero_block_test(ce.h);
  BitString joined = join_sequences(ce.a, ce.b);
  PassVerdict v = zb.passes(SequencePrefix::zero_padded(joined), ce.h.size() - 1);
  CHECK(!v.passed);

  // A join with a one planted into a designated-zero block escapes.
  BitString tampered = joined;
  tampered.set_bit(2 * ce.h[0] + 1, 1);  // B's first block position 0
  PassVerdict v2 = zb.passes(SequencePrefix::zero_padded(tampered), ce.h.size() - 1);
  CHECK(v2.passed);

  // Measure bound of the zero-block test: exactly 2^{-h(n)}.
  for (std::size_t n = 0; n < ce.h.size(); ++n) {
    CHECK(zb.stage(n).measure() == DyadicRational::pow2(-static_cast<long>(ce.h[n])));
  }
}

TEST_CASE("counterexample pair feeds the join test of a zero-block oracle test") {
  Registry r;
  r.push_back(entry("id", "", 2));
  CounterexampleResult ce = counterexample_pair(r, 1);
  REQUIRE(ce.h.size() == 3);
  REQUIRE(ce.h[2] <= 12);

  // An oracle test whose stage n holds the points that are zero across the
  // B-designated blocks below h(n); B fails it with any oracle.
  auto h = ce.h;
  LengthSchedule bound = LengthSchedule::table({h[0], h[1], h[2]});
  OracleTest detector{
      "b-zero-blocks", bound, [h](std::size_t n, const SequencePrefix&) {
        std::size_t level = h[n];
        std::vector<std::size_t> zero_positions;
        for (std::size_t j = 0; 2 * j + 1 <= n; ++j) {
          for (std::size_t p = h[2 * j]; p < h[2 * j + 1] && p < level; ++p) {
            zero_positions.push_back(p);
          }
        }
        std::vector<BitString> gens;
        BitString w = BitString::zeros(level);
        do {
          bool ok = true;
          for (std::size_t p : zero_positions) {
            if (w.bit(p) != 0) ok = false;
          }
          if (ok) gens.push_back(w);
        } while (w.next_same_length());
        return ClopenSet(level, std::move(gens));
      }};

  SequencePrefix oa = SequencePrefix::zero_padded(ce.a);
  SequencePrefix ob = SequencePrefix::zero_padded(ce.b);
  PassVerdict rel = oracle_passes(detector, oa, ob, 2);
  CHECK(!rel.passed);  // B really is zero on its designated blocks

  BoundedTest joined = lambalgen_join_test(detector);
  PassVerdict jv =
      joined.passes(SequencePrefix::zero_padded(join_sequences(ce.a, ce.b)), 2);
  CHECK(!jv.passed);
}

TEST_CASE("zero_block_test input validation") {
  CHECK_THROWS_AS(zero_block_test({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(zero_block_test({0, 2, 2}), std::invalid_argument);
}
