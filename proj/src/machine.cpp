#include "brt/machine.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace brt {

RunLimits effective_limits(const RunLimits& requested) {
  RunLimits out = requested;
  if (const char* cap = std::getenv("BRK_MAX_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end && *end == '\0' && v > 0) {
      out.steps = std::min<std::uint64_t>(out.steps, v);
    }
  }
  return out;
}

DslProgram DslProgram::parse(const std::string& text, std::string name, RunLimits limits) {
  DslProgram p;
  p.name_ = std::move(name);
  p.source_ = text;
  p.limits_ = limits;

  std::vector<std::vector<Node>*> scopes{&p.nodes_};
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("dsl parse error, line " + std::to_string(lineno) + ": " + why);
    };
    Node node;
    bool needs_operand = false;
    if (word == "push0") node.op = Node::Op::Push0;
    else if (word == "push1") node.op = Node::Op::Push1;
    else if (word == "append0") node.op = Node::Op::Append0;
    else if (word == "append1") node.op = Node::Op::Append1;
    else if (word == "cat") node.op = Node::Op::Cat;
    else if (word == "drop") node.op = Node::Op::Drop;
    else if (word == "dup") node.op = Node::Op::Dup;
    else if (word == "swap") node.op = Node::Op::Swap;
    else if (word == "len") node.op = Node::Op::Len;
    else if (word == "cmpeq") node.op = Node::Op::CmpEq;
    else if (word == "input") { node.op = Node::Op::Input; needs_operand = true; }
    else if (word == "oracle") { node.op = Node::Op::Oracle; needs_operand = true; p.uses_oracle_ = true; }
    else if (word == "oracleidx") { node.op = Node::Op::OracleIdx; p.uses_oracle_ = true; }
    else if (word == "diverge") node.op = Node::Op::Diverge;
    else if (word == "loop") { node.op = Node::Op::Loop; needs_operand = true; }
    else if (word == "endloop") {
      if (scopes.size() == 1) fail("endloop without loop");
      scopes.pop_back();
      continue;
    } else {
      fail("unknown instruction '" + word + "'");
    }
    if (needs_operand) {
      if (!(ls >> node.operand)) fail("'" + word + "' needs a numeric operand");
    }
    std::string trailing;
    if (ls >> trailing) fail("trailing token '" + trailing + "'");
    scopes.back()->push_back(std::move(node));
    if (word == "loop") {
      scopes.push_back(&scopes.back()->back().body);
    }
  }
  if (scopes.size() != 1) {
    throw std::invalid_argument("dsl parse error: unterminated loop");
  }
  return p;
}

struct DslRunner {
  const BitString& input;
  const SequencePrefix* oracle;
  RunLimits limits;
  RunResult result;
  std::vector<BitString> stack;
  std::uint64_t space = 0;

  bool charge_step() {
    if (result.steps >= limits.steps) {
      result.status = RunStatus::BudgetExceeded;
      return false;
    }
    ++result.steps;
    return true;
  }

  bool track_space() {
    result.max_space_bits = std::max(result.max_space_bits, space);
    if (space > limits.space_bits) {
      result.status = RunStatus::BudgetExceeded;
      return false;
    }
    return true;
  }

  BitString pop_or_empty() {
    if (stack.empty()) return BitString();
    BitString out = std::move(stack.back());
    stack.pop_back();
    space -= out.size();
    return out;
  }

  void push(BitString s) {
    space += s.size();
    stack.push_back(std::move(s));
  }

  bool query_oracle(std::size_t index, int& bit) {
    if (!oracle) {
      result.status = RunStatus::OracleUnavailable;
      return false;
    }
    result.oracle_queries.push_back(index);
    try {
      bit = oracle->bit(index);
    } catch (const PrefixTooShort&) {
      result.status = RunStatus::OracleOutOfRange;
      return false;
    }
    return true;
  }

  bool exec(const std::vector<DslProgram::Node>& nodes);
};

bool DslRunner::exec(const std::vector<DslProgram::Node>& nodes) {
  using Op = DslProgram::Node::Op;
  for (const auto& node : nodes) {
    if (!charge_step()) return false;
    switch (node.op) {
      case Op::Push0: push(BitString::parse("0")); break;
      case Op::Push1: push(BitString::parse("1")); break;
      case Op::Append0:
      case Op::Append1: {
        BitString top = pop_or_empty();
        top.push_back(node.op == Op::Append1 ? 1 : 0);
        push(std::move(top));
        break;
      }
      case Op::Cat: {
        BitString t = pop_or_empty();
        BitString s = pop_or_empty();
        push(s + t);
        break;
      }
      case Op::Drop: pop_or_empty(); break;
      case Op::Dup: {
        BitString top = pop_or_empty();
        push(top);
        push(std::move(top));
        break;
      }
      case Op::Swap: {
        BitString a = pop_or_empty();
        BitString b = pop_or_empty();
        push(std::move(a));
        push(std::move(b));
        break;
      }
      case Op::Len: {
        BitString s = pop_or_empty();
        push(BitString::ones(s.size()));
        break;
      }
      case Op::CmpEq: {
        BitString t = pop_or_empty();
        BitString s = pop_or_empty();
        push(s == t ? BitString::parse("1") : BitString::parse("0"));
        break;
      }
      case Op::Input: {
        if (node.operand < input.size()) {
          push(input.bit(node.operand) ? BitString::parse("1") : BitString::parse("0"));
        } else {
          push(BitString());
        }
        break;
      }
      case Op::Oracle: {
        int bit = 0;
        if (!query_oracle(node.operand, bit)) return false;
        push(bit ? BitString::parse("1") : BitString::parse("0"));
        break;
      }
      case Op::OracleIdx: {
        BitString s = pop_or_empty();
        int bit = 0;
        if (!query_oracle(s.size(), bit)) return false;
        push(bit ? BitString::parse("1") : BitString::parse("0"));
        break;
      }
      case Op::Diverge:
        result.status = RunStatus::Diverged;
        return false;
      case Op::Loop: {
        for (std::size_t i = 0; i < node.operand; ++i) {
          if (!exec(node.body)) return false;
        }
        break;
      }
    }
    if (!track_space()) return false;
  }
  return true;
}

RunResult DslProgram::run(const BitString& input, const SequencePrefix* oracle) const {
  DslRunner r{input, oracle, effective_limits(limits_), {}, {}, 0};
  r.push(input);
  if (r.exec(nodes_)) {
    r.result.status = RunStatus::Ok;
    r.result.output = r.stack.empty() ? BitString() : r.stack.back();
  }
  return std::move(r.result);
}

TableMachine::TableMachine(std::string name,
                           std::map<BitString, std::optional<BitString>> entries,
                           Fallback fallback)
    : entries_(std::move(entries)), fallback_(fallback) {
  name_ = std::move(name);
}

RunResult TableMachine::run(const BitString& input, const SequencePrefix*) const {
  RunResult out;
  auto it = entries_.find(input);
  if (it != entries_.end()) {
    if (!it->second) {
      out.status = RunStatus::Diverged;
    } else {
      out.output = *it->second;
    }
    return out;
  }
  switch (fallback_) {
    case Fallback::Empty: break;
    case Fallback::Echo: out.output = input; break;
    case Fallback::Diverge: out.status = RunStatus::Diverged; break;
  }
  return out;
}

TableMachine tabulate(const Machine& m, std::size_t max_len, TableMachine::Fallback fallback,
                      const SequencePrefix* oracle) {
  if (max_len > 22) {
    throw std::invalid_argument("tabulate: input length bound too large");
  }
  std::map<BitString, std::optional<BitString>> entries;
  for (std::size_t len = 0; len <= max_len; ++len) {
    BitString w = BitString::zeros(len);
    do {
      RunResult r = m.run(w, oracle);
      if (r.status == RunStatus::Diverged) {
        entries.emplace(w, std::nullopt);
      } else if (r.ok()) {
        entries.emplace(w, r.output);
      } else {
        throw std::runtime_error("tabulate: machine did not complete on input " + w.str());
      }
    } while (w.next_same_length());
  }
  return TableMachine(m.name() + ".table", std::move(entries), fallback);
}

}  // namespace brt
