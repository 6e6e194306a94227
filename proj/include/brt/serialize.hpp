#pragma once

#include <json.hpp>
#include <string>

#include "brt/bounded_test.hpp"
#include "brt/generators.hpp"
#include "brt/machine.hpp"
#include "brt/martingale.hpp"

namespace brt {

/// Key-ordered JSON keeps every emitted artifact byte-deterministic.
using json = nlohmann::ordered_json;

json clopen_to_json(const ClopenSet& s);
ClopenSet clopen_from_json(const json& j);

/// Affine, polynomial and table schedules serialize; Custom does not.
json schedule_to_json(const LengthSchedule& s);
LengthSchedule schedule_from_json(const json& j);

/// {"schedule": ..., "stages": [{"n", "level", "generators"}...], "weak": b}
/// Exports explicit stages through `depth`; predicate stages are rejected.
json test_to_json(const BoundedTest& t, std::size_t depth);
/// Rebuilds a stage-table test; the schedule element, when present and
/// serializable, is cross-checked against the stage levels.
BoundedTest test_from_json(const json& j);

/// Intensional test specs accepted by the CLI:
///   {"kind":"explicit", ...}            (the test_to_json format)
///   {"kind":"immunity", "f": sched}
///   {"kind":"chernoff", "m": k, "f": sched}
BoundedTest test_from_spec(const json& j);

/// {"kind":"table","depth":k,"values":{sigma: "num/2^exp"}} plus the
/// intensional forms {"kind":"uniform"} and {"kind":"all-in","path":bits}.
json martingale_to_json(const Martingale& d, std::size_t depth);
Martingale martingale_from_json(const json& j);

/// {"kind":"dsl","text":...} | {"kind":"table","entries":{...},"default":...}
/// Divergence serializes as the literal token "inf" (never a valid word).
json machine_to_json(const Machine& m);
std::shared_ptr<Machine> machine_from_json(const json& j);

json registry_to_json(const Registry& r);
Registry registry_from_json(const json& j);

json diagonal_log_to_json(const std::vector<DiagonalStage>& log);

/// ASCII 0/1 words; run-length framing ("<count>x<bit>" per line) optional.
std::string bits_to_text(const BitString& bits, bool run_length = false);
BitString bits_from_text(const std::string& text);

}  // namespace brt
