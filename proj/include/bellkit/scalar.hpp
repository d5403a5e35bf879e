#pragma once

// A probability-like value that is either an exact rational or a double.
//
// Finite hidden-variable constructions stay exact end to end; angle-derived
// (quantum) values are doubles. Arithmetic keeps exactness as long as both
// operands are exact and degrades to double otherwise, so one code path
// serves both representations.

#include <cmath>
#include <cstdio>
#include <string>

#include "bellkit/rational.hpp"

namespace bellkit {

class Scalar {
 public:
  constexpr Scalar() : exact_(true), rat_(), val_(0.0) {}
  Scalar(const Rational& r) : exact_(true), rat_(r), val_(r.to_double()) {}
  Scalar(double v) : exact_(false), rat_(), val_(v) {}
  Scalar(int v) : exact_(true), rat_(v), val_(static_cast<double>(v)) {}

  static Scalar exact(std::int64_t num, std::int64_t den = 1) {
    return Scalar(Rational(num, den));
  }

  bool is_exact() const { return exact_; }
  double value() const { return val_; }
  const Rational& rat() const {
    if (!exact_) throw NumericalError("scalar is not exact");
    return rat_;
  }

  // "num/den" when exact, round-trippable decimal otherwise.
  std::string repr() const {
    if (exact_) return rat_.str();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", val_);
    return buf;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ + b.rat_);
    return Scalar(a.val_ + b.val_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ - b.rat_);
    return Scalar(a.val_ - b.val_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ * b.rat_);
    return Scalar(a.val_ * b.val_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ / b.rat_);
    if (b.val_ == 0.0) throw NumericalError("scalar division by zero");
    return Scalar(a.val_ / b.val_);
  }
  Scalar operator-() const {
    if (exact_) return Scalar(-rat_);
    return Scalar(-val_);
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.rat_ == b.rat_;
    return a.val_ == b.val_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.rat_ < b.rat_;
    return a.val_ < b.val_;
  }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  friend Scalar abs(const Scalar& a) {
    if (a.exact_) return Scalar(abs(a.rat_));
    return Scalar(std::fabs(a.val_));
  }

 private:
  bool exact_;
  Rational rat_;
  double val_;
};

}  // namespace bellkit
