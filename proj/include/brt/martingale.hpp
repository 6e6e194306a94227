#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "brt/bitstring.hpp"
#include "brt/dyadic.hpp"
#include "brt/schedule.hpp"
#include "brt/sequence.hpp"

namespace brt {

/// A nonnegative capital function on words with d("") = 1 and the fairness
/// law d(s) = (d(s0) + d(s1))/2, evaluated exactly.  Evaluation is pure;
/// values memoize behind a mutex (idempotent fill).  A martingale may carry
/// a witness schedule f, making "succeeds" the checkable statement
/// d(X restricted to f(n)) >= 2^n.
class Martingale {
public:
  Martingale() : Martingale(uniform()) {}

  static Martingale from_function(std::string name,
                                  std::function<DyadicRational(const BitString&)> eval);

  /// d == 1: the fair-coin strategy.
  static Martingale uniform();

  /// Doubles along the given point and is 0 off it.
  static Martingale all_in_path(SequencePrefix path);

  /// Values prescribed on all words of length `depth` (averaging upward,
  /// constant below each leaf beyond the depth).  leaf(w) must average to 1;
  /// checked at construction.
  static Martingale from_leaf_values(std::size_t depth,
                                     std::function<DyadicRational(const BitString&)> leaf,
                                     std::string name = "leaf-table");

  DyadicRational operator()(const BitString& sigma) const;

  const std::string& name() const { return name_; }
  const std::optional<LengthSchedule>& witness() const { return witness_; }
  Martingale with_witness(LengthSchedule f) const;

private:
  struct Memo {
    std::mutex mutex;
    std::map<std::string, DyadicRational> values;
  };
  Martingale(std::string name, std::function<DyadicRational(const BitString&)> eval)
      : name_(std::move(name)), eval_(std::move(eval)), memo_(std::make_shared<Memo>()) {}

  std::string name_;
  std::function<DyadicRational(const BitString&)> eval_;
  std::optional<LengthSchedule> witness_;
  std::shared_ptr<Memo> memo_;
};

/// Outcome of a fairness-law audit.
struct MartingaleReport {
  bool valid = true;
  std::string reason;           // "root", "negative" or "law"
  BitString sigma;              // offending word
  DyadicRational lhs, rhs;      // both sides of the failed equation
};

/// Verifies d("") = 1 and the averaging law at every word shorter than
/// `depth`, exactly.
MartingaleReport check_martingale(const Martingale& d, std::size_t depth);

/// Kraft's inequality: sum over H of d(tau) 2^-|tau| <= d(sigma) 2^-|sigma|
/// for any antichain H of extensions of sigma.  Throws std::invalid_argument
/// if H is not an antichain of extensions.  Returns the exact comparison
/// (0 means equality, negative means strict inequality, positive means the
/// inequality fails -- impossible for a valid martingale).
int kraft_compare(const Martingale& d, const BitString& sigma, const std::vector<BitString>& h);

/// Convenience wrapper: true iff the inequality holds.
bool kraft_check(const Martingale& d, const BitString& sigma, const std::vector<BitString>& h);

/// The bounded success condition as a checkable triple: verifies
/// d(x restricted to f(n)) >= 2^n for all n <= depth; returns the first n
/// where it fails, if any.
std::optional<std::size_t> success_failure(const Martingale& d, const LengthSchedule& f,
                                           const SequencePrefix& x, std::size_t depth);

}  // namespace brt
