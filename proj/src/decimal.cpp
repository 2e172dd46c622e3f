#include "fel/decimal.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace fel {

namespace {

bool valid_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++frac_digits;
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

}  // namespace

Decimal::Decimal(std::string_view text) : text_(text) {
  if (!valid_decimal(text)) throw DomainError("not a decimal literal: '" + std::string(text) + "'");
}

Decimal Decimal::from_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return Decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

Decimal Decimal::from_real(const Real& x, int digits) {
  return Decimal(x.str(digits));
}

double Decimal::to_double() const { return std::stod(text_); }

Real Decimal::to_real() const {
  Real r;
  std::string s = text_;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN);
  return r;
}

bool Decimal::is_zero() const {
  for (char ch : text_) {
    if (ch == 'e' || ch == 'E') break;
    if (ch >= '1' && ch <= '9') return false;
  }
  return true;
}

Decimal Decimal::negated() const {
  if (text_[0] == '-') return Decimal(text_.substr(1));
  if (text_[0] == '+') return Decimal("-" + text_.substr(1));
  return Decimal("-" + text_);
}

Rational::Rational(std::string_view text) : text_(text) {
  if (text == "inf" || text == "infinity" || text == "∞") {
    infinite_ = true;
    return;
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    num_ = Decimal(text);
  } else {
    num_ = Decimal(text.substr(0, slash));
    den_ = Decimal(text.substr(slash + 1));
    if (den_.is_zero()) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
  }
  if (num_.str()[0] == '-' && !num_.is_zero()) throw DomainError("penalty A must be non-negative");
  if (den_.str()[0] == '-') throw DomainError("penalty A must be non-negative");
}

double Rational::to_double() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return num_.to_double() / den_.to_double();
}

Real Rational::to_real() const {
  if (infinite_) return infinity_v<Real>();
  return num_.to_real() / den_.to_real();
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kUnconverged: return "unconverged";
    case Status::kBoundaryMaximum: return "boundary-maximum";
    case Status::kUncertainSign: return "uncertain-sign";
    case Status::kNotInClass: return "not-in-class";
    case Status::kDegenerate: return "degenerate";
    case Status::kBudget: return "budget";
    case Status::kNoCandidate: return "no-candidate";
  }
  return "unknown";
}

PrecisionContext PrecisionContext::with_digits(int digits) {
  PrecisionContext ctx;
  ctx.digits = digits;
  ctx.target_abs_err = std::pow(10.0, -(digits - 10));
  return ctx;
}

void PrecisionContext::validate() const {
  if (digits < 30) throw DomainError("working precision must be at least 30 digits");
  if (!(target_abs_err > 0)) throw DomainError("target_abs_err must be positive");
  if (target_abs_err < std::pow(10.0, 5 - digits) * (1 - 1e-12))
    throw DomainError("target_abs_err leaves fewer than 5 guard digits");
}

}  // namespace fel
