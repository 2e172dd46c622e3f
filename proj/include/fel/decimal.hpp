#pragma once

// Exact textual numbers. Parameters travel as decimal / rational strings so
// that table inputs are never rounded through binary floating point.

#include "fel/numeric.hpp"

#include <string>
#include <string_view>

namespace fel {

/// A validated decimal literal: [+-]digits[.digits][(e|E)[+-]digits].
class Decimal {
 public:
  Decimal() : text_("0") {}
  explicit Decimal(std::string_view text);

  /// Shortest round-trip decimal for a double.
  static Decimal from_double(double x);
  /// Significant-digit rendering of a Real at its current precision.
  static Decimal from_real(const Real& x, int digits);

  const std::string& str() const { return text_; }
  double to_double() const;
  Real to_real() const;

  template <class T>
  T as() const {
    if constexpr (std::is_same_v<T, Real>) return to_real(); else return static_cast<T>(to_double());
  }

  bool is_zero() const;
  Decimal negated() const;

  friend bool operator==(const Decimal& a, const Decimal& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
};

/// Non-negative penalty: "p/q", a decimal, or "inf".
class Rational {
 public:
  Rational() : Rational("0") {}
  explicit Rational(std::string_view text);

  const std::string& str() const { return text_; }
  bool infinite() const { return infinite_; }
  double to_double() const;
  Real to_real() const;

  template <class T>
  T as() const {
    if constexpr (std::is_same_v<T, Real>) return to_real(); else return static_cast<T>(to_double());
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
  bool infinite_ = false;
  Decimal num_;
  Decimal den_{"1"};
};

}  // namespace fel
