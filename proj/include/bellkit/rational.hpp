#pragma once

// Exact rational arithmetic on int64 numerator/denominator pairs.
//
// Every probability that enters a coupling or a feasibility check is small
// and structured (denominators are products of hidden-state counts), so a
// fixed-width representation with __int128 intermediates is enough. All
// operations normalize (gcd-reduced, denominator > 0) and throw
// NumericalError if a normalized value no longer fits in int64.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bellkit/errors.hpp"

namespace bellkit {

class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ValidationError("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Canonical "num/den" form, e.g. "1/2", "-3/4", "0/1".
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "n/d", plain integers ("3", "-2") and decimal strings ("0.25").
  static std::optional<Rational> parse(std::string_view s);

  friend Rational operator+(const Rational& a, const Rational& b) {
    I128 n = I128(a.num_) * b.den_ + I128(b.num_) * a.den_;
    return from_i128(n, I128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    I128 n = I128(a.num_) * b.den_ - I128(b.num_) * a.den_;
    return from_i128(n, I128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(I128(a.num_) * b.num_, I128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw NumericalError("rational division by zero");
    return from_i128(I128(a.num_) * b.den_, I128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // both normalized
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }

 private:
  using I128 = __int128;

  static std::uint64_t ugcd(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    // A gcd of two reachable magnitudes always fits: it divides a post-check value.
    return static_cast<std::uint64_t>(a);
  }

  static Rational from_i128(I128 n, I128 d) {
    if (d == 0) throw NumericalError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n)
                                 : static_cast<unsigned __int128>(n);
    unsigned __int128 ud = static_cast<unsigned __int128>(d);
    if (un != 0) {
      unsigned __int128 g = ugcd(un, ud);
      un /= g;
      ud /= g;
      n = n < 0 ? -static_cast<I128>(un) : static_cast<I128>(un);
      d = static_cast<I128>(ud);
    } else {
      d = 1;
      n = 0;
    }
    constexpr I128 kMax = INT64_MAX;
    constexpr I128 kMin = INT64_MIN;
    if (n > kMax || n < kMin || d > kMax) {
      throw NumericalError("rational overflow (value no longer fits in int64)");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void normalize() { *this = from_i128(num_, den_); }

  std::int64_t num_;
  std::int64_t den_;
};

inline std::optional<Rational> Rational::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  std::int64_t intpart = 0;
  bool any_digit = false;
  auto read_digits = [&](std::int64_t& out, int* count) -> bool {
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      if (out > (INT64_MAX - 9) / 10) return false;  // overflow
      out = out * 10 + (s[i] - '0');
      ++i;
      any_digit = true;
      if (count) ++*count;
    }
    return true;
  };
  if (!read_digits(intpart, nullptr)) return std::nullopt;
  if (i < s.size() && s[i] == '/') {
    if (!any_digit) return std::nullopt;
    ++i;
    std::int64_t den = 0;
    bool dneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      dneg = s[i] == '-';
      ++i;
    }
    any_digit = false;
    if (!read_digits(den, nullptr) || !any_digit || i != s.size() || den == 0) {
      return std::nullopt;
    }
    std::int64_t n = neg ? -intpart : intpart;
    return Rational(n, dneg ? -den : den);
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::int64_t frac = 0;
    int digits = 0;
    if (!read_digits(frac, &digits)) return std::nullopt;
    if (!any_digit || i != s.size() || digits > 18) return std::nullopt;
    std::int64_t den = 1;
    for (int k = 0; k < digits; ++k) den *= 10;
    __int128 n = static_cast<__int128>(intpart) * den + frac;
    if (n > INT64_MAX) return std::nullopt;
    std::int64_t nn = static_cast<std::int64_t>(n);
    return Rational(neg ? -nn : nn, den);
  }
  if (!any_digit || i != s.size()) return std::nullopt;
  return Rational(neg ? -intpart : intpart);
}

}  // namespace bellkit
