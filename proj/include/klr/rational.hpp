/* rational.hpp: exact rational arithmetic on 64-bit words.
 *
 * Every coefficient produced by the defining relations is a small integer,
 * so 64 bits is generous; the overflow guard is a tripwire, not a limit we
 * expect to meet. Intermediate products are taken in 128 bits and checked
 * before narrowing.
 */

#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "klr/error.hpp"

namespace klr {

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}
  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw invalid_input("rational with zero denominator");
    normalize();
  }

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

  Rational& operator+=(const Rational& o) {
    __int128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    __int128 d = i128(den_) * o.den_;
    assign(n, d);
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    assign(i128(num_) * o.num_, i128(den_) * o.den_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  /* "p" when integral, "p/q" otherwise. */
  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  /* Accepts the same shapes to_string emits, plus an optional leading '-'. */
  static Rational parse(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text));
      return Rational(std::stoll(text.substr(0, slash)),
                      std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw invalid_input("malformed rational: " + text);
    }
  }

 private:
  struct unchecked {};
  Rational(unchecked, long long n, long long d) : num_(n), den_(d) {}

  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  void assign(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d < lo || d > hi)
      throw internal_error("rational overflow");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  void normalize() { assign(num_, den_); }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  long long num_;
  long long den_;
};

}  // namespace klr
