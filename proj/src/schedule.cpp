#include "brt/schedule.hpp"

#include <stdexcept>

namespace brt {

LengthSchedule::LengthSchedule() : LengthSchedule(identity()) {}

LengthSchedule LengthSchedule::affine(std::size_t a, std::size_t b) {
  if (a < 1) {
    throw std::invalid_argument("LengthSchedule::affine: slope must be >= 1");
  }
  std::string label = std::to_string(a) + "n+" + std::to_string(b);
  return LengthSchedule(Kind::Affine, std::move(label), {a, b},
                        [a, b](std::size_t n) { return a * n + b; });
}

LengthSchedule LengthSchedule::poly(std::vector<std::size_t> coeffs) {
  if (coeffs.empty()) {
    throw std::invalid_argument("LengthSchedule::poly: no coefficients");
  }
  auto eval = [coeffs](std::size_t n) {
    std::size_t acc = 0;
    std::size_t p = 1;
    for (std::size_t c : coeffs) {
      acc += c * p;
      p *= n;
    }
    return acc;
  };
  return LengthSchedule(Kind::Poly, "poly", coeffs, eval);
}

LengthSchedule LengthSchedule::table(std::vector<std::size_t> values) {
  if (values.empty()) {
    throw std::invalid_argument("LengthSchedule::table: empty table");
  }
  auto eval = [values](std::size_t n) {
    if (n >= values.size()) {
      throw std::out_of_range("LengthSchedule::table: index " + std::to_string(n) +
                              " beyond table of size " + std::to_string(values.size()));
    }
    return values[n];
  };
  return LengthSchedule(Kind::Table, "table", values, eval);
}

LengthSchedule LengthSchedule::from_function(std::string label,
                                             std::function<std::size_t(std::size_t)> f) {
  return LengthSchedule(Kind::Custom, std::move(label), {}, std::move(f));
}

void LengthSchedule::validate(std::size_t upto) const {
  std::size_t prev = 0;
  for (std::size_t n = 0; n <= upto; ++n) {
    std::size_t v = eval_(n);
    if (v < n) {
      throw std::invalid_argument("LengthSchedule: l(" + std::to_string(n) + ") = " +
                                  std::to_string(v) + " < n");
    }
    if (n > 0 && v <= prev) {
      throw std::invalid_argument("LengthSchedule: not strictly increasing at n = " +
                                  std::to_string(n));
    }
    prev = v;
  }
}

OrderFunction::OrderFunction(std::vector<std::size_t> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("OrderFunction: empty table");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1]) {
      throw std::invalid_argument("OrderFunction: not non-decreasing at " + std::to_string(i));
    }
  }
}

}  // namespace brt
