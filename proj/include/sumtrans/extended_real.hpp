#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace sumtrans {

// A value of R ∪ {-inf}. +inf and NaN are rejected at construction; the sum of
// two such values stays in the set, with (-inf) + x = -inf.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw std::domain_error("extended real must be finite or -inf");
    }
  }

  static constexpr ExtendedReal neg_inf() {
    ExtendedReal r;
    r.v_ = -std::numeric_limits<double>::infinity();
    return r;
  }

  bool is_finite() const { return v_ != -std::numeric_limits<double>::infinity(); }
  bool is_neg_inf() const { return !is_finite(); }

  // Raw IEEE value: -inf when not finite.
  constexpr double raw() const { return v_; }

  double value() const {
    if (!is_finite()) throw std::domain_error("extended real is -inf");
    return v_;
  }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    ExtendedReal r;
    r.v_ = a.v_ + b.v_;
    return r;
  }
  ExtendedReal& operator+=(ExtendedReal o) {
    v_ += o.v_;
    return *this;
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
    return a.v_ <=> b.v_;
  }

 private:
  double v_ = 0.0;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace sumtrans
