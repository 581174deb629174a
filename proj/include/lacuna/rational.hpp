#ifndef LACUNA_RATIONAL_HPP
#define LACUNA_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lacuna/errors.hpp"

namespace lacuna {

// Exact rational with 128-bit numerator/denominator. Every operation
// normalizes and throws OverflowError instead of wrapping, so results are
// either exact or an explicit failure. Covers the dyadic data this library
// works with (double inputs, dyadic breakpoints) with a lot of headroom.
class Rational {
 public:
  using int_t = __int128;

  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(int n) : num_(n), den_(1) {}        // NOLINT
  Rational(int_t n, int_t d) : num_(n), den_(d) { normalize(); }

  // Exact conversion: every finite double is p/2^k.
  static Rational from_double(double x);
  // Accepts "p", "-p/q", decimal strings like "0.25", and "sqrt2" is *not*
  // handled here (see SqrtRational).
  static Rational parse(std::string_view text);

  int_t num() const { return num_; }
  int_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }

  std::string str() const;

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return add(a, b, /*negate_b=*/false);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return add(a, b, /*negate_b=*/true);
  }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return Rational::cmp(a, b) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return Rational::cmp(a, b) > 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return Rational::cmp(a, b) <= 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return Rational::cmp(a, b) >= 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static int_t gcd(int_t a, int_t b);
  static int_t checked_mul(int_t a, int_t b);
  static int_t checked_add(int_t a, int_t b);
  static int cmp(const Rational& a, const Rational& b);
  static Rational add(const Rational& a, const Rational& b, bool negate_b);
  void normalize();

  int_t num_;
  int_t den_;  // always > 0
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

inline Rational min(const Rational& a, const Rational& b) {
  return a <= b ? a : b;
}

inline Rational max(const Rational& a, const Rational& b) {
  return a >= b ? a : b;
}

// Integer power with nonnegative exponent.
Rational pow(const Rational& base, int exponent);

// A nonnegative real x carried as x^2 exact, with the root kept exact when x
// itself is rational. Used for trig amplitudes and the uniform bound D, where
// values like sqrt(2) must participate in exact cancellations.
class SqrtRational {
 public:
  SqrtRational() : sq_(1), root_(Rational(1)), has_root_(true) {}

  static SqrtRational of_rational(const Rational& r);
  static SqrtRational sqrt_of(const Rational& s);
  // Accepts plain rational text, "sqrt2", or "sqrt(p/q)".
  static SqrtRational parse(std::string_view text);

  const Rational& squared() const { return sq_; }
  bool is_rational() const { return has_root_; }
  const Rational& rational_root() const;
  double value() const {
    return has_root_ ? root_.to_double() : std::sqrt(sq_.to_double());
  }
  std::string str() const;

 private:
  Rational sq_;
  Rational root_;
  bool has_root_;
};

}  // namespace lacuna

#endif
