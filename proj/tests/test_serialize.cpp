#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brt/martingale_ops.hpp"
#include "brt/serialize.hpp"
#include "support.hpp"

using namespace brt;

TEST_CASE("clopen and schedule json round trips") {
  ClopenSet s(3, {BitString::parse("101"), BitString::parse("000")});
  json j = clopen_to_json(s);
  CHECK(j["generators"][0] == "000");  // sorted output
  CHECK(clopen_from_json(j) == s);

  LengthSchedule aff = LengthSchedule::affine(2, 3);
  LengthSchedule back = schedule_from_json(schedule_to_json(aff));
  for (std::size_t n = 0; n <= 8; ++n) CHECK(back(n) == aff(n));

  LengthSchedule tab = LengthSchedule::table({0, 4, 9});
  CHECK(schedule_from_json(schedule_to_json(tab))(2) == 9);

  CHECK_THROWS_AS(schedule_to_json(LengthSchedule::from_function("x", [](std::size_t n) {
                    return n;
                  })),
                  std::invalid_argument);
}

TEST_CASE("test json round trip and validation") {
  BoundedTest t = immunity_test(LengthSchedule::identity_plus(1));
  json j = test_to_json(t, 3);
  BoundedTest back = test_from_json(j);
  for (std::size_t n = 0; n <= 3; ++n) {
    CHECK(back.stage(n).set() == t.stage(n).set());
  }
  CHECK(back.max_stage() == 3);

  json broken = j;
  broken["stages"][1]["level"] = 9;  // level no longer matches generators
  CHECK_THROWS(test_from_json(broken));

  BoundedTest spec1 = test_from_spec(json{{"kind", "immunity"},
                                          {"f", json{{"kind", "affine"}, {"a", 1}, {"b", 1}}}});
  CHECK(spec1.stage(2).set() == t.stage(2).set());
  BoundedTest spec2 = test_from_spec(json{{"kind", "chernoff"},
                                          {"m", 2},
                                          {"f", json{{"kind", "affine"}, {"a", 1}, {"b", 1}}}});
  CHECK(spec2.stage(0).count() == 0);
}

TEST_CASE("martingale json round trip") {
  testing::Rng rng(4);
  Martingale d = testing::random_martingale(rng, 5);
  json j = martingale_to_json(d, 5);
  Martingale back = martingale_from_json(j);
  for (std::size_t len = 0; len <= 6; ++len) {
    BitString w = BitString::zeros(len);
    do {
      CHECK(back(w) == d(w));
    } while (w.next_same_length());
  }

  CHECK(martingale_from_json(json{{"kind", "uniform"}})(BitString::parse("0101")) ==
        DyadicRational::one());
  Martingale allin = martingale_from_json(json{{"kind", "all-in"}, {"path", "00"}});
  CHECK(allin(BitString::parse("00")) == DyadicRational(cpp_int(4)));

  // A tampered inner value breaks the averaging-law audit.
  json bad = j;
  bad["values"]["0"] = "77/2^0";
  CHECK_THROWS_AS(martingale_from_json(bad), std::invalid_argument);
}

TEST_CASE("machine json round trip") {
  DslProgram dbl = DslProgram::parse("dup\ncat", "dbl");
  json j = machine_to_json(dbl);
  auto back = machine_from_json(j);
  CHECK(back->run(BitString::parse("10")).output.str() == "1010");

  TableMachine tm("t",
                  {{BitString::parse("0"), BitString::parse("111")},
                   {BitString::parse("1"), std::nullopt}},
                  TableMachine::Fallback::Diverge);
  json jt = machine_to_json(tm);
  CHECK(jt["entries"]["1"] == "inf");
  auto back2 = machine_from_json(jt);
  CHECK(back2->run(BitString::parse("0")).output.str() == "111");
  CHECK(back2->run(BitString::parse("1")).diverged());
  CHECK(back2->run(BitString::parse("00")).diverged());
}

TEST_CASE("registry round trip") {
  Registry r;
  r.push_back(RegistryEntry{"id", std::make_shared<DslProgram>(DslProgram::parse("", "id")),
                            LengthSchedule::identity_plus(2)});
  r.push_back(RegistryEntry{
      "tbl",
      std::make_shared<TableMachine>(
          "tbl",
          std::map<BitString, std::optional<BitString>>{{BitString(), BitString::parse("11")}},
          TableMachine::Fallback::Empty),
      LengthSchedule::identity_plus(3)});
  json j = registry_to_json(r);
  CHECK(j[0].contains("program"));  // DSL entries carry their text inline
  CHECK(j[1].contains("machine"));
  Registry back = registry_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back[0].name == "id");
  CHECK(back[0].f(3) == 5);
  CHECK(back[0].machine->run(BitString::parse("01")).output.str() == "01");
  CHECK(back[1].machine->run(BitString()).output.str() == "11");
}

TEST_CASE("bits text forms") {
  BitString bits = BitString::parse("0001111011");
  CHECK(bits_from_text(bits_to_text(bits, false)) == bits);
  CHECK(bits_from_text(bits_to_text(bits, true)) == bits);
  CHECK(bits_to_text(bits, true) == "3x0\n4x1\n1x0\n2x1\n");
  CHECK(bits_from_text("01\n10\n").str() == "0110");
  CHECK_THROWS_AS(bits_from_text("01x"), std::invalid_argument);
}
