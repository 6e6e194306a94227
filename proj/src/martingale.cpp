#include "brt/martingale.hpp"

#include <stdexcept>

namespace brt {

Martingale Martingale::from_function(std::string name,
                                     std::function<DyadicRational(const BitString&)> eval) {
  return Martingale(std::move(name), std::move(eval));
}

Martingale Martingale::uniform() {
  return Martingale("uniform", [](const BitString&) { return DyadicRational::one(); });
}

Martingale Martingale::all_in_path(SequencePrefix path) {
  auto eval = [path](const BitString& sigma) {
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma.bit(i) != path.bit(i)) return DyadicRational::zero();
    }
    return DyadicRational::pow2(static_cast<long>(sigma.size()));
  };
  return Martingale("all-in:" + path.id(), eval);
}

namespace {

DyadicRational average_down_to_leaves(const std::function<DyadicRational(const BitString&)>& leaf,
                                      std::size_t depth, const BitString& sigma) {
  if (sigma.size() >= depth) {
    return leaf(sigma.prefix(depth));
  }
  BitString s0 = sigma, s1 = sigma;
  s0.push_back(0);
  s1.push_back(1);
  return (average_down_to_leaves(leaf, depth, s0) + average_down_to_leaves(leaf, depth, s1))
      .half();
}

}  // namespace

Martingale Martingale::from_leaf_values(std::size_t depth,
                                        std::function<DyadicRational(const BitString&)> leaf,
                                        std::string name) {
  Martingale d(std::move(name), [depth, leaf = std::move(leaf)](const BitString& s) {
    return average_down_to_leaves(leaf, depth, s);
  });
  if (d(BitString()) != DyadicRational::one()) {
    throw std::invalid_argument("from_leaf_values: leaves do not average to 1 (got " +
                                d(BitString()).str() + ")");
  }
  return d;
}

DyadicRational Martingale::operator()(const BitString& sigma) const {
  std::string key = sigma.str();
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->values.find(key);
    if (it != memo_->values.end()) return it->second;
  }
  DyadicRational v = eval_(sigma);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto [it, inserted] = memo_->values.emplace(std::move(key), std::move(v));
  return it->second;
}

Martingale Martingale::with_witness(LengthSchedule f) const {
  Martingale out = *this;
  out.witness_ = std::move(f);
  return out;
}

MartingaleReport check_martingale(const Martingale& d, std::size_t depth) {
  MartingaleReport report;
  DyadicRational root = d(BitString());
  if (root != DyadicRational::one()) {
    report.valid = false;
    report.reason = "root";
    report.lhs = root;
    report.rhs = DyadicRational::one();
    return report;
  }
  // Breadth-first over all words shorter than depth.
  std::vector<BitString> frontier{BitString()};
  for (std::size_t len = 0; len < depth; ++len) {
    std::vector<BitString> next;
    next.reserve(frontier.size() * 2);
    for (const auto& sigma : frontier) {
      BitString s0 = sigma, s1 = sigma;
      s0.push_back(0);
      s1.push_back(1);
      DyadicRational left = d(s0), right = d(s1), here = d(sigma);
      DyadicRational avg = (left + right).half();
      if (avg != here) {
        report.valid = false;
        report.reason = "law";
        report.sigma = sigma;
        report.lhs = here;
        report.rhs = avg;
        return report;
      }
      next.push_back(std::move(s0));
      next.push_back(std::move(s1));
    }
    frontier = std::move(next);
  }
  return report;
}

int kraft_compare(const Martingale& d, const BitString& sigma,
                  const std::vector<BitString>& h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!sigma.is_prefix_of(h[i])) {
      throw std::invalid_argument("kraft: " + h[i].str() + " does not extend " + sigma.str());
    }
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      if (h[i].compatible_with(h[j])) {
        throw std::invalid_argument("kraft: not an antichain (" + h[i].str() + " vs " +
                                    h[j].str() + ")");
      }
    }
  }
  DyadicRational lhs;
  for (const auto& tau : h) {
    lhs += d(tau) * DyadicRational::pow2(-static_cast<long>(tau.size()));
  }
  DyadicRational rhs = d(sigma) * DyadicRational::pow2(-static_cast<long>(sigma.size()));
  return lhs.compare(rhs);
}

bool kraft_check(const Martingale& d, const BitString& sigma, const std::vector<BitString>& h) {
  return kraft_compare(d, sigma, h) <= 0;
}

std::optional<std::size_t> success_failure(const Martingale& d, const LengthSchedule& f,
                                           const SequencePrefix& x, std::size_t depth) {
  for (std::size_t n = 0; n <= depth; ++n) {
    if (d(x.prefix(f(n))) < DyadicRational::pow2(static_cast<long>(n))) {
      return n;
    }
  }
  return std::nullopt;
}

}  // namespace brt
