#include "brt/sequence.hpp"

namespace brt {

SequencePrefix SequencePrefix::literal(BitString bits) {
  auto s = std::make_shared<State>();
  s->id = "literal";
  s->bits = std::move(bits);
  return SequencePrefix(std::move(s));
}

SequencePrefix SequencePrefix::generated(std::string id, std::function<int(std::size_t)> rule) {
  auto s = std::make_shared<State>();
  s->id = std::move(id);
  s->rule = std::move(rule);
  return SequencePrefix(std::move(s));
}

SequencePrefix SequencePrefix::constant(int bit) {
  return generated(bit ? "ones" : "zeros", [bit](std::size_t) { return bit; });
}

SequencePrefix SequencePrefix::periodic(const BitString& pattern) {
  if (pattern.empty()) return constant(0);
  return generated("periodic:" + pattern.str(),
                   [pattern](std::size_t i) { return pattern.bit(i % pattern.size()); });
}

SequencePrefix SequencePrefix::zero_padded(BitString head) {
  return generated("zero-padded",
                   [head = std::move(head)](std::size_t i) {
                     return i < head.size() ? head.bit(i) : 0;
                   });
}

void SequencePrefix::ensure(std::size_t n) const {
  if (state_->bits.size() >= n) return;
  if (!state_->rule) {
    throw PrefixTooShort(state_->bits.size(), n);
  }
  for (std::size_t i = state_->bits.size(); i < n; ++i) {
    state_->bits.push_back(state_->rule(i));
  }
}

BitString SequencePrefix::prefix(std::size_t n) const {
  ensure(n);
  return state_->bits.prefix(n);
}

int SequencePrefix::bit(std::size_t i) const {
  ensure(i + 1);
  return state_->bits.bit(i);
}

}  // namespace brt
