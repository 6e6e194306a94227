#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace brt {

/// A strictly increasing total length function n -> l(n) with l(n) >= n.
/// Affine, polynomial, and table forms serialize; arbitrary function forms
/// carry a label but do not.
class LengthSchedule {
public:
  enum class Kind { Affine, Poly, Table, Custom };

  /// Defaults to the identity schedule.
  LengthSchedule();

  /// l(n) = a*n + b, a >= 1.
  static LengthSchedule affine(std::size_t a, std::size_t b);
  /// l(n) = n + c.
  static LengthSchedule identity_plus(std::size_t c) { return affine(1, c); }
  static LengthSchedule identity() { return affine(1, 0); }
  /// l(n) = sum coeffs[i] * n^i.
  static LengthSchedule poly(std::vector<std::size_t> coeffs);
  /// Explicit values; evaluation past the table throws.
  static LengthSchedule table(std::vector<std::size_t> values);
  static LengthSchedule from_function(std::string label, std::function<std::size_t(std::size_t)> f);

  std::size_t operator()(std::size_t n) const { return eval_(n); }

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  /// Affine coefficients / poly coefficients / table values, per kind.
  const std::vector<std::size_t>& params() const { return params_; }

  /// Verifies l strictly increasing and l(n) >= n on [0, upto].  Throws
  /// std::invalid_argument on the first violation.
  void validate(std::size_t upto) const;

private:
  LengthSchedule(Kind kind, std::string label, std::vector<std::size_t> params,
                 std::function<std::size_t(std::size_t)> eval)
      : kind_(kind), label_(std::move(label)), params_(std::move(params)), eval_(std::move(eval)) {}

  Kind kind_;
  std::string label_;
  std::vector<std::size_t> params_;
  std::function<std::size_t(std::size_t)> eval_;
};

/// A non-decreasing function used to bound machine output lengths from
/// below.  Stored as an explicit table with a constant tail.
class OrderFunction {
public:
  OrderFunction() : values_{0} {}
  explicit OrderFunction(std::vector<std::size_t> values);

  std::size_t operator()(std::size_t n) const {
    return n < values_.size() ? values_[n] : values_.back();
  }
  const std::vector<std::size_t>& values() const { return values_; }

private:
  std::vector<std::size_t> values_;
};

}  // namespace brt
