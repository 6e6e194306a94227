#include "brt/serialize.hpp"

#include <sstream>

#include "brt/test_ops.hpp"

namespace brt {

json clopen_to_json(const ClopenSet& s) {
  json gens = json::array();
  for (const auto& g : s.generators()) gens.push_back(g.str());
  return json{{"level", s.level()}, {"generators", std::move(gens)}};
}

ClopenSet clopen_from_json(const json& j) {
  std::vector<BitString> gens;
  for (const auto& g : j.at("generators")) {
    gens.push_back(BitString::parse(g.get<std::string>()));
  }
  return ClopenSet(j.at("level").get<std::size_t>(), std::move(gens));
}

json schedule_to_json(const LengthSchedule& s) {
  switch (s.kind()) {
    case LengthSchedule::Kind::Affine:
      return json{{"kind", "affine"}, {"a", s.params()[0]}, {"b", s.params()[1]}};
    case LengthSchedule::Kind::Poly:
      return json{{"kind", "poly"}, {"coeffs", s.params()}};
    case LengthSchedule::Kind::Table:
      return json{{"kind", "table"}, {"values", s.params()}};
    case LengthSchedule::Kind::Custom:
      throw std::invalid_argument("schedule_to_json: custom schedule '" + s.label() +
                                  "' has no serial form");
  }
  throw std::logic_error("schedule_to_json: unknown kind");
}

LengthSchedule schedule_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine") {
    return LengthSchedule::affine(j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>());
  }
  if (kind == "poly") {
    return LengthSchedule::poly(j.at("coeffs").get<std::vector<std::size_t>>());
  }
  if (kind == "table") {
    return LengthSchedule::table(j.at("values").get<std::vector<std::size_t>>());
  }
  throw std::invalid_argument("schedule_from_json: unknown kind '" + kind + "'");
}

json test_to_json(const BoundedTest& t, std::size_t depth) {
  json stages = json::array();
  for (std::size_t n = 0; n <= depth; ++n) {
    Stage s = t.stage(n);
    json gens = json::array();
    for (const auto& g : s.set().generators()) gens.push_back(g.str());
    stages.push_back(json{{"n", n}, {"level", s.level()}, {"generators", std::move(gens)}});
  }
  json out;
  try {
    out["schedule"] = schedule_to_json(t.schedule());
  } catch (const std::invalid_argument&) {
    out["schedule"] = json{{"kind", "table"}, {"values", [&] {
                             std::vector<std::size_t> v;
                             for (std::size_t n = 0; n <= depth; ++n) v.push_back(t.schedule()(n));
                             return v;
                           }()}};
  }
  out["stages"] = std::move(stages);
  out["weak"] = t.weak_claim();
  return out;
}

BoundedTest test_from_json(const json& j) {
  std::vector<Stage> stages;
  for (const auto& js : j.at("stages")) {
    std::vector<BitString> gens;
    for (const auto& g : js.at("generators")) {
      gens.push_back(BitString::parse(g.get<std::string>()));
    }
    stages.push_back(Stage(ClopenSet(js.at("level").get<std::size_t>(), std::move(gens))));
  }
  bool weak = j.value("weak", false);
  BoundedTest t = BoundedTest::from_stages(std::move(stages), weak, "imported");
  if (j.contains("schedule")) {
    LengthSchedule declared = schedule_from_json(j.at("schedule"));
    for (std::size_t n = 0; n <= *t.max_stage(); ++n) {
      if (declared(n) != t.schedule()(n)) {
        throw std::invalid_argument("test_from_json: stage " + std::to_string(n) +
                                    " level does not match the declared schedule");
      }
    }
  }
  return t;
}

BoundedTest test_from_spec(const json& j) {
  std::string kind = j.value("kind", "explicit");
  if (kind == "explicit") return test_from_json(j);
  if (kind == "immunity") return immunity_test(schedule_from_json(j.at("f")));
  if (kind == "chernoff") {
    return chernoff_test(j.at("m").get<std::size_t>(), schedule_from_json(j.at("f")));
  }
  throw std::invalid_argument("test_from_spec: unknown kind '" + kind + "'");
}

json martingale_to_json(const Martingale& d, std::size_t depth) {
  if (depth > 16) {
    throw std::invalid_argument("martingale_to_json: table depth too large");
  }
  json values = json::object();
  for (std::size_t len = 0; len <= depth; ++len) {
    BitString w = BitString::zeros(len);
    do {
      values[w.str()] = d(w).str();
    } while (w.next_same_length());
  }
  return json{{"kind", "table"}, {"depth", depth}, {"values", std::move(values)}};
}

Martingale martingale_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return Martingale::uniform();
  if (kind == "all-in") {
    return Martingale::all_in_path(
        SequencePrefix::zero_padded(BitString::parse(j.at("path").get<std::string>())));
  }
  if (kind == "table") {
    std::size_t depth = j.at("depth").get<std::size_t>();
    auto values = std::make_shared<std::map<std::string, DyadicRational>>();
    for (const auto& [key, val] : j.at("values").items()) {
      values->emplace(key, DyadicRational::parse(val.get<std::string>()));
    }
    auto leaf = [values, depth](const BitString& w) {
      auto it = values->find(w.str());
      if (it == values->end()) {
        throw std::invalid_argument("martingale table: missing value for '" + w.str() + "'");
      }
      return it->second;
    };
    Martingale d = Martingale::from_leaf_values(depth, leaf, "table");
    // The table carries all shorter words too; they must agree with the
    // averaging closure of the leaves.
    for (const auto& [key, val] : *values) {
      if (d(BitString::parse(key)) != val) {
        throw std::invalid_argument("martingale table: value at '" + key +
                                    "' breaks the averaging law");
      }
    }
    return d;
  }
  throw std::invalid_argument("martingale_from_json: unknown kind '" + kind + "'");
}

json machine_to_json(const Machine& m) {
  if (const auto* dsl = dynamic_cast<const DslProgram*>(&m)) {
    return json{{"kind", "dsl"}, {"name", dsl->name()}, {"text", dsl->source()}};
  }
  if (const auto* table = dynamic_cast<const TableMachine*>(&m)) {
    json entries = json::object();
    for (const auto& [in, out] : table->entries()) {
      entries[in.str()] = out ? json(out->str()) : json("inf");
    }
    std::string fallback;
    switch (table->fallback()) {
      case TableMachine::Fallback::Empty: fallback = "empty"; break;
      case TableMachine::Fallback::Echo: fallback = "echo"; break;
      case TableMachine::Fallback::Diverge: fallback = "inf"; break;
    }
    return json{{"kind", "table"},
                {"name", table->name()},
                {"entries", std::move(entries)},
                {"default", fallback}};
  }
  throw std::invalid_argument("machine_to_json: machine '" + m.name() +
                              "' is not serializable; tabulate it first");
}

std::shared_ptr<Machine> machine_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  std::string name = j.value("name", kind);
  if (kind == "dsl") {
    return std::make_shared<DslProgram>(
        DslProgram::parse(j.at("text").get<std::string>(), name));
  }
  if (kind == "table") {
    std::map<BitString, std::optional<BitString>> entries;
    for (const auto& [in, out] : j.at("entries").items()) {
      std::string val = out.get<std::string>();
      entries.emplace(BitString::parse(in),
                      val == "inf" ? std::nullopt : std::make_optional(BitString::parse(val)));
    }
    std::string fb = j.value("default", "empty");
    TableMachine::Fallback fallback = TableMachine::Fallback::Empty;
    if (fb == "echo") fallback = TableMachine::Fallback::Echo;
    else if (fb == "inf") fallback = TableMachine::Fallback::Diverge;
    else if (fb != "empty") throw std::invalid_argument("machine_from_json: bad default");
    return std::make_shared<TableMachine>(name, std::move(entries), fallback);
  }
  throw std::invalid_argument("machine_from_json: unknown kind '" + kind + "'");
}

json registry_to_json(const Registry& r) {
  json out = json::array();
  for (const auto& entry : r) {
    json e{{"name", entry.name}};
    // DSL machines ride in "program" as plain text; table machines keep
    // the full object form under "machine".
    if (const auto* dsl = dynamic_cast<const DslProgram*>(entry.machine.get())) {
      e["program"] = dsl->source();
    } else {
      e["machine"] = machine_to_json(*entry.machine);
    }
    e["f"] = schedule_to_json(entry.f);
    out.push_back(std::move(e));
  }
  return out;
}

Registry registry_from_json(const json& j) {
  Registry out;
  for (const auto& e : j) {
    std::string name = e.at("name").get<std::string>();
    std::shared_ptr<Machine> machine;
    if (e.contains("program")) {
      machine = std::make_shared<DslProgram>(
          DslProgram::parse(e.at("program").get<std::string>(), name));
    } else {
      machine = machine_from_json(e.at("machine"));
    }
    out.push_back(RegistryEntry{std::move(name), std::move(machine),
                                schedule_from_json(e.at("f"))});
  }
  return out;
}

json diagonal_log_to_json(const std::vector<DiagonalStage>& log) {
  json out = json::array();
  for (const auto& s : log) {
    out.push_back(json{{"stage", s.index},
                       {"entry", s.entry},
                       {"c", s.c},
                       {"target_len", s.target_len},
                       {"chosen", s.chosen.str()}});
  }
  return out;
}

std::string bits_to_text(const BitString& bits, bool run_length) {
  if (!run_length) {
    return bits.str() + "\n";
  }
  std::ostringstream out;
  std::size_t i = 0;
  while (i < bits.size()) {
    std::size_t j = i;
    while (j < bits.size() && bits.bit(j) == bits.bit(i)) ++j;
    out << (j - i) << 'x' << bits.bit(i) << '\n';
    i = j;
  }
  return out.str();
}

BitString bits_from_text(const std::string& text) {
  BitString out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto x = line.find('x');
    if (x != std::string::npos && line.find_first_not_of("0123456789") == x) {
      std::size_t count = std::stoull(line.substr(0, x));
      std::string bit = line.substr(x + 1);
      if (bit != "0" && bit != "1") {
        throw std::invalid_argument("bits_from_text: bad run-length line '" + line + "'");
      }
      for (std::size_t i = 0; i < count; ++i) out.push_back(bit == "1" ? 1 : 0);
    } else {
      for (char c : line) {
        if (c == '0') out.push_back(0);
        else if (c == '1') out.push_back(1);
        else if (c == '\r') continue;
        else throw std::invalid_argument("bits_from_text: invalid character");
      }
    }
  }
  return out;
}

}  // namespace brt
