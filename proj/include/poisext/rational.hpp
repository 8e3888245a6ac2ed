#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace poisext {

// Exact rational arithmetic over 128-bit integers.  Wide enough for the
// Gegenbauer coefficient tables up to degree 20 and for the boundary-operator
// recursion trees; overflow throws instead of wrapping.
class Rational {
public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(Int n) : num_(n), den_(1) {}
  Rational(Int n, Int d) : num_(n), den_(d) { normalize(); }

  Int num() const { return num_; }
  Int den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-() const { return raw(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(add_checked(mul_checked(a.num_, b.den_),
                                mul_checked(b.num_, a.den_)),
                    mul_checked(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce before multiplying to keep intermediates small.
    Int g1 = gcd128(a.num_, b.den_), g2 = gcd128(b.num_, a.den_);
    return Rational(mul_checked(a.num_ / g1, b.num_ / g2),
                    mul_checked(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    Int g1 = gcd128(a.num_, b.num_), g2 = gcd128(b.den_, a.den_);
    return Rational(mul_checked(a.num_ / g1, b.den_ / g2),
                    mul_checked(a.den_ / g2, b.num_ / g1));
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }

  bool is_zero() const { return num_ == 0; }

  std::string str() const {
    std::string s = int_str(num_);
    if (den_ != 1) s += "/" + int_str(den_);
    return s;
  }

  // Parses a decimal literal ("-2.5", "0.125", "3") into an exact rational.
  static Rational from_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      neg = s[pos] == '-';
      ++pos;
    }
    Int num = 0, den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (c == '.') {
        if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        num = add_checked(mul_checked(num, 10), c - '0');
        if (seen_dot) den = mul_checked(den, 10);
        seen_digit = true;
      } else {
        throw std::invalid_argument("bad decimal: " + text);
      }
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal: " + text);
    return Rational(neg ? -num : num, den);
  }

private:
  static Rational raw(Int n, Int d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static Int add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
      throw std::overflow_error("rational overflow");
    return r;
  }
  static Int mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
      throw std::overflow_error("rational overflow");
    return r;
  }

  static Int gcd128(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static std::string int_str(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (u != 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    return neg ? "-" + s : s;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Int num_;
  Int den_;
};

}  // namespace poisext
