#pragma once

// Scalar plumbing shared by every kernel: the multiprecision type, working
// precision, error-bounded results and status codes.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fel {

namespace mp = boost::multiprecision;

/// Variable-precision MPFR float. Expression templates are disabled so that
/// `auto` always names a value.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Thrown on precondition violations (bad parameters, out-of-domain input).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Status {
  kOk,
  kUnconverged,
  kBoundaryMaximum,
  kUncertainSign,
  kNotInClass,
  kDegenerate,
  kBudget,
  kNoCandidate,
};

const char* to_string(Status s);

struct PrecisionContext {
  int digits = 40;
  double target_abs_err = 1e-30;

  /// Context with the default error goal of 10^-(digits-10).
  static PrecisionContext with_digits(int digits);

  /// Throws DomainError unless digits >= 30 and target_abs_err >= 10^(5-digits).
  void validate() const;
};

/// Sets the default precision of newly created Real values for the lifetime of
/// the guard (per thread), restoring the previous value afterwards.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(int digits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(digits));
  }
  explicit ScopedPrecision(const PrecisionContext& ctx) : ScopedPrecision(ctx.digits) {}
  ~ScopedPrecision() { Real::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

template <class V>
struct ErrBounded {
  V value{};
  double err = 0.0;
  Status status = Status::kOk;

  bool ok() const { return status == Status::kOk; }
};

// ---- per-type helpers -------------------------------------------------------

template <class T>
inline T pi_v() {
  if constexpr (std::is_same_v<T, Real>) {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
  } else {
    return static_cast<T>(3.141592653589793238462643383279502884L);
  }
}

template <class T>
inline double to_double(const T& x) {
  if constexpr (std::is_same_v<T, Real>) {
    return x.template convert_to<double>();
  } else {
    return static_cast<double>(x);
  }
}

/// Machine epsilon of T at the current working precision.
template <class T>
inline double epsilon_of() {
  if constexpr (std::is_same_v<T, Real>) {
    return std::pow(10.0, 1.0 - static_cast<double>(Real::default_precision()));
  } else {
    return std::numeric_limits<T>::epsilon();
  }
}

/// sin and cos of one argument (a single MPFR call for Real).
template <class T>
inline void sin_cos(const T& x, T& s, T& c) {
  if constexpr (std::is_same_v<T, Real>) {
    mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
  } else {
    using std::cos;
    using std::sin;
    s = sin(x);
    c = cos(x);
  }
}

template <class T>
inline T infinity_v() {
  return std::numeric_limits<T>::infinity();
}

template <>
inline Real infinity_v<Real>() {
  Real r;
  mpfr_set_inf(r.backend().data(), 1);
  return r;
}

}  // namespace fel
