#pragma once

#include "primpairs/arith/bigint.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace primpairs {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit ExactRational(const BigInt& n) : v_(n) {}
  ExactRational(const BigInt& num, const BigInt& den);

  /// Parses a plain decimal literal such as "0.8915505547" or "1.9758e25"
  /// exactly.
  static ExactRational from_decimal(std::string_view text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }

  /// Decimal expansion rounded toward zero to `places` fractional digits.
  std::string to_decimal(unsigned places = 10) const;
  /// Decimal expansion rounded toward +infinity to `places` fractional digits.
  std::string to_decimal_ceil(unsigned places) const;
  /// Smallest integer >= this value.
  BigInt ceil() const;
  BigInt floor() const;
  double to_double() const { return v_.get_d(); }
  /// "num/den" form.
  std::string to_fraction() const { return v_.get_str(10); }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return from(a.v_ + b.v_); }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return from(a.v_ - b.v_); }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return from(a.v_ * b.v_); }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
  ExactRational operator-() const { return from(-v_); }
  ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  static ExactRational from(mpq_class v) {
    ExactRational r;
    r.v_ = std::move(v);
    r.v_.canonicalize();
    return r;
  }
  mpq_class v_;
};

}  // namespace primpairs
