#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace microwidths {

/// Exact rational scalar used for every exponent computation. Expression
/// templates are off so arithmetic composes with std::min/max and friends.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

double to_double(const Rational& r);

Rational rat(long long num, long long den = 1);

/// Parses "3", "-7/4" etc. Throws std::invalid_argument on junk or zero denominator.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

/// A value in (0, infinity]: integrability/summability exponents live here.
/// 1/inf is 0 by convention, so reciprocals of ExtRat values are plain
/// (finite, nonnegative) rationals and all region comparisons stay exact.
class ExtRat {
 public:
  ExtRat() : finite_(1) {}

  static ExtRat infinity() {
    ExtRat e;
    e.is_inf_ = true;
    return e;
  }

  static ExtRat finite(const Rational& v) {
    if (v <= 0) throw std::invalid_argument("ExtRat: value must be positive");
    ExtRat e;
    e.finite_ = v;
    return e;
  }

  /// Builds the value with the given reciprocal; recip = 0 gives infinity.
  static ExtRat from_reciprocal(const Rational& recip) {
    if (recip < 0) throw std::invalid_argument("ExtRat: reciprocal must be >= 0");
    return recip == 0 ? infinity() : finite(Rational(1) / recip);
  }

  bool is_infinite() const { return is_inf_; }

  /// Finite value; throws on infinity.
  const Rational& value() const {
    if (is_inf_) throw std::domain_error("ExtRat: infinite value");
    return finite_;
  }

  /// 1/p as an exact rational (0 when p = inf).
  Rational reciprocal() const { return is_inf_ ? Rational(0) : Rational(1) / finite_; }

  double as_double() const;

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.is_inf_ || b.is_inf_) return a.is_inf_ == b.is_inf_;
    return a.finite_ == b.finite_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.is_inf_) return false;
    if (b.is_inf_) return true;
    return a.finite_ < b.finite_;
  }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  friend bool operator<(const ExtRat& a, const Rational& b) { return !a.is_inf_ && a.finite_ < b; }
  friend bool operator>(const ExtRat& a, const Rational& b) { return a.is_inf_ || a.finite_ > b; }
  friend bool operator<=(const ExtRat& a, const Rational& b) { return !a.is_inf_ && a.finite_ <= b; }
  friend bool operator>=(const ExtRat& a, const Rational& b) { return a.is_inf_ || a.finite_ >= b; }
  friend bool operator==(const ExtRat& a, const Rational& b) { return !a.is_inf_ && a.finite_ == b; }

  friend ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
  friend ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

 private:
  bool is_inf_ = false;
  Rational finite_;
};

/// Parses "inf", "Inf", "3/2", ... into an ExtRat.
ExtRat parse_extrat(const std::string& text);

std::string to_string(const ExtRat& e);

std::ostream& operator<<(std::ostream& os, const ExtRat& e);

}  // namespace microwidths
