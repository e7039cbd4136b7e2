#include "ipd/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ipd {
namespace {

using Int = Rational::Int;

Int abs_int(Int v) { return v < 0 ? -v : v; }

Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Rational: multiplication overflow");
  return out;
}

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("Rational: addition overflow");
  return out;
}

std::string int_to_string(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // Negating INT128_MIN is unreachable: values are reduced and overflow-checked.
  if (neg) v = -v;
  std::string digits;
  while (v > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return neg ? "-" + digits : digits;
}

}  // namespace

Rational::Rational(Int numerator, Int denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  Int g = gcd_int(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  num_ = numerator;
  den_ = denominator;
}

Rational Rational::from_double(double value, std::int64_t scale) {
  if (!std::isfinite(value)) throw std::domain_error("Rational: non-finite value");
  if (scale <= 0) throw std::domain_error("Rational: scale must be positive");
  double scaled = std::round(value * static_cast<double>(scale));
  if (std::fabs(scaled) > 9.0e18) throw std::overflow_error("Rational: value out of range");
  return Rational(static_cast<Int>(static_cast<std::int64_t>(scaled)), static_cast<Int>(scale));
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return int_to_string(num_);
  return int_to_string(num_) + "/" + int_to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  Int g = gcd_int(a.den_, b.den_);
  Int lhs = checked_mul(a.num_, b.den_ / g);
  Int rhs = checked_mul(b.num_, a.den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first to keep intermediates small.
  Int g1 = gcd_int(a.num_, b.den_);
  Int g2 = gcd_int(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Int g = gcd_int(a.den_, b.den_);
  Int lhs = checked_mul(a.num_, b.den_ / g);
  Int rhs = checked_mul(b.num_, a.den_ / g);
  return lhs <=> rhs;
}

}  // namespace ipd
