#include "lacuna/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

namespace lacuna {

Rational::int_t Rational::gcd(int_t a, int_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational::int_t Rational::checked_mul(int_t a, int_t b) {
  int_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("rational: multiplication overflow");
  return r;
}

Rational::int_t Rational::checked_add(int_t a, int_t b) {
  int_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("rational: addition overflow");
  return r;
}

void Rational::normalize() {
  if (den_ == 0) throw Error("rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  int_t g = gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::add(const Rational& a, const Rational& b, bool negate_b) {
  // a/b + c/d with the gcd of denominators factored out first.
  int_t g = gcd(a.den_, b.den_);
  int_t da = a.den_ / g;
  int_t db = b.den_ / g;
  int_t bn = negate_b ? -b.num_ : b.num_;
  int_t n = checked_add(checked_mul(a.num_, db), checked_mul(bn, da));
  int_t d = checked_mul(a.den_, db);
  return Rational(n, d);
}

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce before multiplying to keep intermediates small.
  Rational::int_t g1 = Rational::gcd(a.num_, b.den_);
  Rational::int_t g2 = Rational::gcd(b.num_, a.den_);
  Rational r;
  r.num_ = Rational::checked_mul(a.num_ / g1, b.num_ / g2);
  r.den_ = Rational::checked_mul(a.den_ / g2, b.den_ / g1);
  return r;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error("rational: division by zero");
  Rational inv;
  inv.num_ = b.den_;
  inv.den_ = b.num_;
  if (inv.den_ < 0) {
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return a * inv;
}

int Rational::cmp(const Rational& a, const Rational& b) {
  // Compare via the exact difference; overflow here means the operands were
  // already astronomically far apart, so fall back to sign inspection.
  int_t lhs, rhs;
  bool of = __builtin_mul_overflow(a.num_, b.den_, &lhs) ||
            __builtin_mul_overflow(b.num_, a.den_, &rhs);
  if (!of) return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  long double la = static_cast<long double>(a.num_) / a.den_;
  long double lb = static_cast<long double>(b.num_) / b.den_;
  return la < lb ? -1 : (la > lb ? 1 : 0);
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw Error("rational: non-finite double");
  if (x == 0.0) return Rational();
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  long long m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m, 1);
  if (exp > 0) {
    if (exp > 100) throw OverflowError("rational: double exponent too large");
    int_t p = 1;
    for (int i = 0; i < exp; ++i) p = checked_mul(p, 2);
    r.num_ = checked_mul(r.num_, p);
  } else if (exp < 0) {
    if (exp < -120) {
      // Shave trailing zero bits of the mantissa first.
      while (r.num_ % 2 == 0 && exp < 0) {
        r.num_ /= 2;
        ++exp;
      }
      if (exp < -120) throw OverflowError("rational: double exponent too small");
    }
    int_t p = 1;
    for (int i = 0; i < -exp; ++i) p = checked_mul(p, 2);
    r.den_ = p;
  }
  r.normalize();
  return r;
}

namespace {

Rational::int_t parse_int(std::string_view s, size_t* pos) {
  size_t i = *pos;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i >= s.size() || s[i] < '0' || s[i] > '9')
    throw ParseError("rational: expected digits in '" + std::string(s) + "'");
  Rational::int_t v = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    Rational::int_t nv;
    if (__builtin_mul_overflow(v, (Rational::int_t)10, &nv) ||
        __builtin_add_overflow(nv, (Rational::int_t)(s[i] - '0'), &nv))
      throw OverflowError("rational: literal too large");
    v = nv;
    ++i;
  }
  *pos = i;
  return neg ? -v : v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  size_t end = text.size();
  while (end > pos && text[end - 1] == ' ') --end;
  text = text.substr(pos, end - pos);
  if (text.empty()) throw ParseError("rational: empty string");

  pos = 0;
  int_t n = parse_int(text, &pos);
  if (pos == text.size()) return Rational(n, 1);
  if (text[pos] == '/') {
    ++pos;
    int_t d = parse_int(text, &pos);
    if (pos != text.size())
      throw ParseError("rational: trailing characters in '" +
                       std::string(text) + "'");
    return Rational(n, d);
  }
  if (text[pos] == '.') {
    ++pos;
    int_t den = 1;
    int_t frac = 0;
    bool neg = n < 0 || (n == 0 && text[0] == '-');
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      den = checked_mul(den, 10);
      frac = checked_add(checked_mul(frac, 10), text[pos] - '0');
      ++pos;
    }
    if (pos != text.size())
      throw ParseError("rational: trailing characters in '" +
                       std::string(text) + "'");
    Rational r(checked_add(checked_mul(n < 0 ? -n : n, den), frac), den);
    return neg ? -r : r;
  }
  throw ParseError("rational: cannot parse '" + std::string(text) + "'");
}

std::string Rational::str() const {
  auto digits = [](int_t v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    std::string s;
    do {
      s.push_back(static_cast<char>('0' + (int)(u % 10)));
      u /= 10;
    } while (u != 0);
    if (neg) s.push_back('-');
    std::string out(s.rbegin(), s.rend());
    return out;
  };
  if (den_ == 1) return digits(num_);
  return digits(num_) + "/" + digits(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  Rational r(1);
  Rational b = base;
  int e = exponent;
  while (e > 0) {
    if (e & 1) r *= b;
    b = (e > 1) ? b * b : b;
    e >>= 1;
  }
  return r;
}

SqrtRational SqrtRational::of_rational(const Rational& r) {
  if (r.is_negative()) throw Error("sqrt-rational: negative value");
  SqrtRational s;
  s.sq_ = r * r;
  s.root_ = r;
  s.has_root_ = true;
  return s;
}

namespace {

bool isqrt_exact(Rational::int_t v, Rational::int_t* root) {
  if (v < 0) return false;
  long double approx = sqrtl(static_cast<long double>(v));
  Rational::int_t r = static_cast<Rational::int_t>(approx);
  for (Rational::int_t c = r > 1 ? r - 1 : 0; c <= r + 1; ++c) {
    if (c * c == v) {
      *root = c;
      return true;
    }
  }
  return false;
}

}  // namespace

SqrtRational SqrtRational::sqrt_of(const Rational& s) {
  if (s.is_negative()) throw Error("sqrt-rational: negative square");
  SqrtRational out;
  out.sq_ = s;
  Rational::int_t rn = 0, rd = 0;
  if (isqrt_exact(s.num(), &rn) && isqrt_exact(s.den(), &rd)) {
    out.root_ = Rational(rn, rd);
    out.has_root_ = true;
  } else {
    out.root_ = Rational();
    out.has_root_ = false;
  }
  return out;
}

SqrtRational SqrtRational::parse(std::string_view text) {
  if (text.rfind("sqrt", 0) == 0) {
    std::string_view arg = text.substr(4);
    if (!arg.empty() && arg.front() == '(') {
      if (arg.back() != ')') throw ParseError("sqrt-rational: missing ')'");
      arg = arg.substr(1, arg.size() - 2);
    }
    return sqrt_of(Rational::parse(arg));
  }
  return of_rational(Rational::parse(text));
}

const Rational& SqrtRational::rational_root() const {
  if (!has_root_)
    throw IrrationalData("sqrt-rational: value is irrational (" + sq_.str() +
                         " is not a perfect square)");
  return root_;
}

std::string SqrtRational::str() const {
  if (has_root_) return root_.str();
  return "sqrt(" + sq_.str() + ")";
}

}  // namespace lacuna
