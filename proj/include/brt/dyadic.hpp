#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <string_view>

namespace brt {

using boost::multiprecision::cpp_int;

/// Exact nonnegative rational with a power-of-two denominator, kept in
/// canonical form: the numerator is odd or zero, and a zero value has
/// exponent 0.  All arithmetic is exact; there is no rounding anywhere.
class DyadicRational {
public:
  DyadicRational() : num_(0), exp_(0) {}
  explicit DyadicRational(const cpp_int& integer_value) : num_(integer_value), exp_(0) {
    require_nonneg(num_);
    normalize();
  }
  explicit DyadicRational(long integer_value) : DyadicRational(cpp_int(integer_value)) {}

  /// numerator * 2^{-exponent}, canonicalized.
  static DyadicRational scaled(cpp_int numerator, std::size_t exponent);

  /// 2^k, k may be negative.
  static DyadicRational pow2(long k);

  static DyadicRational one() { return DyadicRational(cpp_int(1)); }
  static DyadicRational zero() { return DyadicRational(); }

  const cpp_int& numerator() const { return num_; }
  std::size_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }

  DyadicRational operator+(const DyadicRational& rhs) const;
  DyadicRational operator-(const DyadicRational& rhs) const;  // throws if negative
  DyadicRational operator*(const DyadicRational& rhs) const;
  DyadicRational& operator+=(const DyadicRational& rhs) { return *this = *this + rhs; }
  DyadicRational& operator-=(const DyadicRational& rhs) { return *this = *this - rhs; }
  DyadicRational& operator*=(const DyadicRational& rhs) { return *this = *this * rhs; }

  DyadicRational half() const { return mul_pow2(-1); }
  DyadicRational twice() const { return mul_pow2(1); }
  DyadicRational mul_pow2(long k) const;

  int compare(const DyadicRational& rhs) const;
  bool operator==(const DyadicRational& rhs) const { return compare(rhs) == 0; }
  bool operator!=(const DyadicRational& rhs) const { return compare(rhs) != 0; }
  bool operator<(const DyadicRational& rhs) const { return compare(rhs) < 0; }
  bool operator<=(const DyadicRational& rhs) const { return compare(rhs) <= 0; }
  bool operator>(const DyadicRational& rhs) const { return compare(rhs) > 0; }
  bool operator>=(const DyadicRational& rhs) const { return compare(rhs) >= 0; }

  /// Canonical text form "num/2^exp", e.g. "1/2^2", "0/2^0", "3/2^0".
  std::string str() const;
  /// Accepts "num/2^exp" (canonicalizing) or a bare integer.
  static DyadicRational parse(std::string_view text);

  /// Decimal approximation for display only; never used in any computation.
  double approx() const;

private:
  static void require_nonneg(const cpp_int& n);
  void normalize();

  cpp_int num_;
  std::size_t exp_;
};

}  // namespace brt
