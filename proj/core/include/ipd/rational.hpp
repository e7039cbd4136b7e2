#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ipd {

/// Exact fraction with 128-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator, so equality is
/// structural. Arithmetic throws std::overflow_error instead of wrapping.
class Rational {
 public:
  __extension__ using Int = __int128;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(Int numerator, Int denominator);

  /// Rounds `value` onto the grid 1/scale and reduces.
  static Rational from_double(double value, std::int64_t scale);

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }
  double to_double() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace ipd
