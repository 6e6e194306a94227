#include "brt/clopen.hpp"

#include <algorithm>
#include <stdexcept>

namespace brt {

ClopenSet::ClopenSet(std::size_t level, std::vector<BitString> generators)
    : level_(level), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.size() != level_) {
      throw std::invalid_argument("ClopenSet: generator length " + std::to_string(g.size()) +
                                  " does not match level " + std::to_string(level_));
    }
  }
  std::sort(generators_.begin(), generators_.end());
  auto dup = std::adjacent_find(generators_.begin(), generators_.end());
  if (dup != generators_.end()) {
    throw std::invalid_argument("ClopenSet: duplicate generator " + dup->str());
  }
}

ClopenSet ClopenSet::full(std::size_t level) {
  if (level > 26) {
    throw std::invalid_argument("ClopenSet::full: level too large to materialize");
  }
  std::vector<BitString> gens;
  gens.reserve(std::size_t{1} << level);
  BitString g = BitString::zeros(level);
  do {
    gens.push_back(g);
  } while (g.next_same_length());
  return ClopenSet(level, std::move(gens));
}

ClopenSet ClopenSet::from_mixed(const std::vector<BitString>& prefix_free) {
  if (prefix_free.empty()) return ClopenSet(0);
  for (std::size_t i = 0; i < prefix_free.size(); ++i) {
    for (std::size_t j = i + 1; j < prefix_free.size(); ++j) {
      if (prefix_free[i].compatible_with(prefix_free[j])) {
        throw std::invalid_argument("ClopenSet::from_mixed: family is not prefix-free (" +
                                    prefix_free[i].str() + " vs " + prefix_free[j].str() + ")");
      }
    }
  }
  std::size_t level = 0;
  for (const auto& g : prefix_free) level = std::max(level, g.size());
  std::vector<BitString> gens;
  for (const auto& g : prefix_free) {
    std::size_t gap = level - g.size();
    if (gap > 26) {
      throw std::invalid_argument("ClopenSet::from_mixed: refinement gap too large");
    }
    BitString tail = BitString::zeros(gap);
    do {
      gens.push_back(g + tail);
    } while (tail.next_same_length());
  }
  return ClopenSet(level, std::move(gens));
}

DyadicRational ClopenSet::measure() const {
  return DyadicRational::scaled(cpp_int(static_cast<unsigned long>(generators_.size())), level_);
}

bool ClopenSet::member(const BitString& g) const {
  if (g.size() != level_) return false;
  return std::binary_search(generators_.begin(), generators_.end(), g);
}

bool ClopenSet::contains_prefix(const BitString& x) const {
  if (x.size() < level_) {
    throw std::invalid_argument("ClopenSet::contains_prefix: prefix shorter than level");
  }
  return member(x.prefix(level_));
}

ClopenSet ClopenSet::refined(std::size_t new_level) const {
  if (new_level < level_) {
    throw std::invalid_argument("ClopenSet::refined: cannot coarsen");
  }
  if (new_level == level_) return *this;
  std::size_t gap = new_level - level_;
  if (gap > 26) {
    throw std::invalid_argument("ClopenSet::refined: refinement gap too large");
  }
  std::vector<BitString> gens;
  gens.reserve(generators_.size() << gap);
  for (const auto& g : generators_) {
    BitString tail = BitString::zeros(gap);
    do {
      gens.push_back(g + tail);
    } while (tail.next_same_length());
  }
  return ClopenSet(new_level, std::move(gens));
}

ClopenSet ClopenSet::intersect(const ClopenSet& a, const ClopenSet& b) {
  const ClopenSet& coarse = a.level_ <= b.level_ ? a : b;
  const ClopenSet& fine = a.level_ <= b.level_ ? b : a;
  std::vector<BitString> gens;
  for (const auto& g : fine.generators_) {
    if (coarse.member(g.prefix(coarse.level_))) gens.push_back(g);
  }
  return ClopenSet(fine.level_, std::move(gens));
}

ClopenSet ClopenSet::unite(const ClopenSet& a, const ClopenSet& b) {
  std::size_t level = std::max(a.level_, b.level_);
  ClopenSet ra = a.refined(level);
  ClopenSet rb = b.refined(level);
  std::vector<BitString> gens;
  std::set_union(ra.generators_.begin(), ra.generators_.end(), rb.generators_.begin(),
                 rb.generators_.end(), std::back_inserter(gens));
  return ClopenSet(level, std::move(gens));
}

DyadicRational ClopenSet::measure_within(const BitString& tau) const {
  if (tau.size() <= level_) {
    // Count generators extending tau.
    cpp_int n = 0;
    for (const auto& g : generators_) {
      if (tau.is_prefix_of(g)) ++n;
    }
    return DyadicRational::scaled(n, level_);
  }
  // [tau] is finer than the level: either wholly inside or disjoint.
  return member(tau.prefix(level_)) ? DyadicRational::pow2(-static_cast<long>(tau.size()))
                                    : DyadicRational::zero();
}

std::vector<BitString> ClopenSet::absent_lex_first(std::size_t how_many) const {
  std::vector<BitString> out;
  if (how_many == 0) return out;
  if (level_ < 64) {
    std::size_t total = std::size_t{1} << level_;
    if (generators_.size() + how_many > total) {
      throw std::invalid_argument("ClopenSet::absent_lex_first: not enough absent words");
    }
  }
  out.reserve(how_many);
  BitString candidate = BitString::zeros(level_);
  auto it = generators_.begin();
  while (out.size() < how_many) {
    while (it != generators_.end() && *it < candidate) ++it;
    if (it == generators_.end() || *it != candidate) {
      out.push_back(candidate);
    }
    if (!candidate.next_same_length() && out.size() < how_many) {
      throw std::invalid_argument("ClopenSet::absent_lex_first: not enough absent words");
    }
  }
  return out;
}

}  // namespace brt
