#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brt/bitstring.hpp"
#include "brt/sequence.hpp"

namespace brt {

enum class RunStatus {
  Ok,
  Diverged,          // the machine emitted the divergence token
  BudgetExceeded,    // step or space budget ran out
  OracleUnavailable, // oracle instruction without an oracle
  OracleOutOfRange,  // literal oracle shorter than a queried index
};

struct RunResult {
  RunStatus status = RunStatus::Ok;
  BitString output;
  std::vector<std::size_t> oracle_queries;  // recorded query positions, in order
  std::uint64_t steps = 0;
  std::uint64_t max_space_bits = 0;

  bool ok() const { return status == RunStatus::Ok; }
  bool diverged() const { return status == RunStatus::Diverged; }
};

struct RunLimits {
  std::uint64_t steps = 1u << 20;
  std::uint64_t space_bits = 1u << 22;
};

/// Applies the BRK_MAX_BUDGET environment cap (a global ceiling on steps).
RunLimits effective_limits(const RunLimits& requested);

/// A deterministic string function over {0,1}*, possibly with oracle
/// access, possibly partial (divergence token), always total within its
/// budgets: exceeding a budget is a distinguished outcome, not a crash.
class Machine {
public:
  virtual ~Machine() = default;
  virtual RunResult run(const BitString& input, const SequencePrefix* oracle = nullptr) const = 0;
  virtual const std::string& name() const { return name_; }
  virtual bool uses_oracle() const { return false; }

protected:
  std::string name_ = "machine";
};

/// The stack DSL.  State is a stack of words, initially [input]; the
/// result is the top of the stack (empty word if the stack is empty).
///
/// Instructions, one per line, '#' starts a comment:
///   push0 push1        push a one-symbol word
///   append0 append1    append a symbol to the top word
///   cat                pop t, pop s, push s.t
///   drop               pop
///   dup                push a copy of the top word
///   swap               exchange the two top words
///   len                pop s, push 1^|s|
///   cmpeq              pop t, pop s, push "1" if s = t else "0"
///   input I            push the one-symbol word input(I), or the empty
///                      word when I is out of range
///   oracle I           push the oracle bit at position I (recorded)
///   oracleidx          pop s, push the oracle bit at position |s|
///   diverge            halt with the divergence token
///   loop N ... endloop run the body N times (N a literal; nesting ok)
///
/// Missing operands are treated as empty words, so every program is total.
class DslProgram : public Machine {
public:
  static DslProgram parse(const std::string& text, std::string name = "dsl",
                          RunLimits limits = {});

  RunResult run(const BitString& input, const SequencePrefix* oracle = nullptr) const override;
  bool uses_oracle() const override { return uses_oracle_; }

  const std::string& source() const { return source_; }
  const RunLimits& limits() const { return limits_; }

private:
  struct Node {
    enum class Op {
      Push0, Push1, Append0, Append1, Cat, Drop, Dup, Swap, Len, CmpEq,
      Input, Oracle, OracleIdx, Diverge, Loop
    } op;
    std::size_t operand = 0;       // input/oracle index or loop count
    std::vector<Node> body;        // loop body
  };
  DslProgram() = default;

  std::vector<Node> nodes_;
  std::string source_;
  RunLimits limits_;
  bool uses_oracle_ = false;

  friend struct DslRunner;
};

/// A finite lookup table with a default rule for inputs off the table.
/// Serializable, budget-free, and registry-compatible; used as the compiled
/// form of constructed machines.
class TableMachine : public Machine {
public:
  enum class Fallback {
    Empty,    // empty word
    Echo,     // the input itself
    Diverge,  // divergence token (prefix-free machines)
  };

  TableMachine(std::string name, std::map<BitString, std::optional<BitString>> entries,
               Fallback fallback);

  RunResult run(const BitString& input, const SequencePrefix* oracle = nullptr) const override;

  const std::map<BitString, std::optional<BitString>>& entries() const { return entries_; }
  Fallback fallback() const { return fallback_; }

private:
  std::map<BitString, std::optional<BitString>> entries_;  // nullopt = diverge
  Fallback fallback_;
};

/// An in-process evaluator (construction outputs before tabulation).
class NativeMachine : public Machine {
public:
  using Fn = std::function<RunResult(const BitString&, const SequencePrefix*)>;
  NativeMachine(std::string name, Fn fn, bool uses_oracle = false)
      : fn_(std::move(fn)), uses_oracle_(uses_oracle) {
    name_ = std::move(name);
  }
  RunResult run(const BitString& input, const SequencePrefix* oracle = nullptr) const override {
    return fn_(input, oracle);
  }
  bool uses_oracle() const override { return uses_oracle_; }

private:
  Fn fn_;
  bool uses_oracle_;
};

/// Tabulates a machine over all inputs of length <= max_len.
TableMachine tabulate(const Machine& m, std::size_t max_len, TableMachine::Fallback fallback,
                      const SequencePrefix* oracle = nullptr);

}  // namespace brt
