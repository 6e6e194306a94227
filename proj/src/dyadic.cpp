#include "brt/dyadic.hpp"

#include <stdexcept>

namespace brt {

void DyadicRational::require_nonneg(const cpp_int& n) {
  if (n < 0) {
    throw std::domain_error("DyadicRational: negative value");
  }
}

void DyadicRational::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

DyadicRational DyadicRational::scaled(cpp_int numerator, std::size_t exponent) {
  require_nonneg(numerator);
  DyadicRational d;
  d.num_ = std::move(numerator);
  d.exp_ = exponent;
  d.normalize();
  return d;
}

DyadicRational DyadicRational::pow2(long k) {
  if (k >= 0) {
    return DyadicRational(cpp_int(1) << k);
  }
  return scaled(cpp_int(1), static_cast<std::size_t>(-k));
}

DyadicRational DyadicRational::operator+(const DyadicRational& rhs) const {
  std::size_t e = std::max(exp_, rhs.exp_);
  cpp_int a = num_ << (e - exp_);
  cpp_int b = rhs.num_ << (e - rhs.exp_);
  return scaled(a + b, e);
}

DyadicRational DyadicRational::operator-(const DyadicRational& rhs) const {
  std::size_t e = std::max(exp_, rhs.exp_);
  cpp_int a = num_ << (e - exp_);
  cpp_int b = rhs.num_ << (e - rhs.exp_);
  if (a < b) {
    throw std::domain_error("DyadicRational: subtraction would be negative");
  }
  return scaled(a - b, e);
}

DyadicRational DyadicRational::operator*(const DyadicRational& rhs) const {
  return scaled(num_ * rhs.num_, exp_ + rhs.exp_);
}

DyadicRational DyadicRational::mul_pow2(long k) const {
  if (is_zero()) return DyadicRational();
  if (k >= 0) {
    std::size_t up = static_cast<std::size_t>(k);
    if (up >= exp_) {
      return DyadicRational(num_ << (up - exp_));
    }
    return scaled(num_, exp_ - up);
  }
  return scaled(num_, exp_ + static_cast<std::size_t>(-k));
}

int DyadicRational::compare(const DyadicRational& rhs) const {
  std::size_t e = std::max(exp_, rhs.exp_);
  cpp_int a = num_ << (e - exp_);
  cpp_int b = rhs.num_ << (e - rhs.exp_);
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

std::string DyadicRational::str() const {
  return num_.str() + "/2^" + std::to_string(exp_);
}

DyadicRational DyadicRational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return DyadicRational(cpp_int(std::string(text)));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (den.substr(0, 2) != "2^") {
    throw std::invalid_argument("DyadicRational::parse: denominator must be 2^k");
  }
  std::size_t exponent = std::stoull(std::string(den.substr(2)));
  return scaled(cpp_int(std::string(num)), exponent);
}

double DyadicRational::approx() const {
  // Display only.  Scale into a window that double can hold.
  cpp_int n = num_;
  std::size_t e = exp_;
  while (n >> 512 != 0) {
    n >>= 64;
    if (e < 64) return static_cast<double>(n.convert_to<double>());
    e -= 64;
  }
  double v = n.convert_to<double>();
  while (e >= 64) {
    v /= 18446744073709551616.0;
    e -= 64;
  }
  return v / static_cast<double>(1ull << e);
}

}  // namespace brt
