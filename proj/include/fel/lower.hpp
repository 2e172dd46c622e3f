#pragma once

// Lower bounds for C(A): the dilated/translated family of one-sided
// polynomial-times-exponential transforms
//
//   F̂(t) = g((πt − c)/a),   g(u) = Σ_n b_n u^{2n−1} e^u 1_{u<0} / (2n−1)!,
//
// whose inverse transform is F(x) = −(a/π) e^{2icx} Σ_n b_n (1 + 2iax)^{−2n}.
// Every integral of F̂ against e^{πt} reduces, in u = (πt − c)/a, to
// ∫ p(u) e^{(1+a)u} du and is evaluated in closed form.

#include "fel/bound.hpp"
#include "fel/complex.hpp"
#include "fel/decimal.hpp"
#include "fel/poly_exp.hpp"
#include "fel/quadrature.hpp"
#include "fel/roots.hpp"

#include <cmath>
#include <vector>

namespace fel {

/// Exact (decimal) parameters of a test function.
struct LowerParams {
  Decimal a{"1"};
  Decimal c{"0"};
  std::vector<Decimal> b;

  /// a > 0, at least one coefficient, not all zero.
  void validate() const;
};

/// Numeric image of LowerParams at scalar type T.
template <class T>
struct LowerFamily {
  T a;
  T c;
  std::vector<T> b;
  std::vector<T> poly;  // ascending coefficients of p(u) = Σ b_n u^{2n−1}/(2n−1)!

  LowerFamily(T a_, T c_, std::vector<T> b_) : a(std::move(a_)), c(std::move(c_)), b(std::move(b_)) {
    poly.assign(2 * b.size(), T(0));
    T fact = 1;  // (2n−1)!
    for (std::size_t n = 1; n <= b.size(); ++n) {
      if (n > 1) fact *= T(2 * n - 2) * T(2 * n - 1);
      poly[2 * n - 1] = b[n - 1] / fact;
    }
  }

  static LowerFamily from(const LowerParams& p) {
    std::vector<T> b;
    for (const auto& d : p.b) b.push_back(d.as<T>());
    return LowerFamily(p.a.as<T>(), p.c.as<T>(), std::move(b));
  }

  T to_u(const T& t) const { return (pi_v<T>() * t - c) / a; }
  T to_t(const T& u) const { return (a * u + c) / pi_v<T>(); }
};

template <class T>
T eval_Fhat(const LowerFamily<T>& f, const T& t) {
  using std::exp;
  T u = f.to_u(t);
  if (!(u < 0)) return T(0);
  return poly_eval(std::span<const T>(f.poly), u) * exp(u);
}

/// Σ_n b_n (1 + 2iy)^{−2n}, so that |F(x)| = (a/π)|S(ax)|.
template <class T>
Complex<T> lower_kernel_sum(const std::vector<T>& b, const T& y) {
  Complex<T> z(T(1), T(2) * y);
  Complex<T> w = Complex<T>(T(1)) / (z * z);
  Complex<T> s(T(0));
  for (std::size_t n = b.size(); n-- > 0;) s = (s + Complex<T>(b[n])) * w;
  return s;
}

template <class T>
T eval_F_abs(const LowerFamily<T>& f, const T& x) {
  return f.a / pi_v<T>() * abs(lower_kernel_sum(f.b, f.a * x));
}

/// ‖F‖₁ straight from the definition: (2/π) ∫_0^∞ |S(y)| dy (y = ax), with
/// the tail beyond Y bounded by Σ|b_n| ∫_Y^∞ (2y)^{−2n} dy.
template <class T>
ErrBounded<T> l1_norm_tail_split(const LowerFamily<T>& f, const QuadOptions& opt) {
  using std::abs;
  using std::pow;
  const T pi = pi_v<T>();
  std::vector<T> absb;
  for (const auto& x : f.b) absb.push_back(abs(x));
  auto integrand = [&](const T& y) { return abs(lower_kernel_sum(f.b, y)); };
  auto tail = [&](const T& Y) {
    T s = 0;
    T base = T(2) * Y;
    for (std::size_t n = 1; n <= absb.size(); ++n) {
      if (absb[n - 1] == 0) continue;
      s += absb[n - 1] * pow(base, T(1) - T(2 * n)) / T(2 * (2 * n - 1));
    }
    return s;
  };
  QuadOptions sub = opt;
  sub.tol = opt.tol * to_double(pi) / 2;
  auto r = integrate_semi_infinite(integrand, T(0), Direction::kPlusInfinity, tail, sub);
  ErrBounded<T> out;
  out.value = T(2) / pi * r.value;
  out.err = 2 / to_double(pi) * r.err;
  out.status = r.status;
  return out;
}

/// ‖F‖₁ via y = tan(θ)/2, which maps (1 + 2iy)^{-2n} to cos^{2n}θ e^{-2inθ}:
///   ‖F‖₁ = (1/π) ∫_0^{π/2} |Σ_n b_n cos^{2n−2}θ e^{−2inθ}| dθ,
/// a finite integral of a trigonometric polynomial modulus.
template <class T>
ErrBounded<T> l1_norm(const LowerFamily<T>& f, const QuadOptions& opt) {
  using std::cos;
  using std::sin;
  const T pi = pi_v<T>();
  // |Σ b_n z^{n−1}| with z = cos²θ e^{−2iθ}; the common factor e^{−2iθ} has unit modulus.
  auto integrand = [&](const T& th) {
    T ct = cos(th);
    Complex<T> z(ct * ct * cos(T(2) * th), -ct * ct * sin(T(2) * th));
    Complex<T> s(T(0));
    for (std::size_t n = f.b.size(); n-- > 0;) s = s * z + Complex<T>(f.b[n]);
    return abs(s);
  };
  QuadOptions sub = opt;
  sub.tol = opt.tol * to_double(pi);
  auto r = integrate_finite(integrand, T(0), pi / T(2), sub);
  ErrBounded<T> out;
  out.value = r.value / pi;
  out.err = r.err / to_double(pi);
  out.status = r.status;
  return out;
}

/// One constant-sign stretch of F̂ in t.
template <class T>
struct SignInterval {
  T lo;
  T hi;
  int sign;  // +1, −1
};

template <class T>
struct SignPartition {
  std::vector<T> breakpoints;   // sign changes of F̂ (t-values)
  std::vector<T> uncertain;     // suspected tangential zeros (t-values)
  std::vector<SignInterval<T>> intervals;
  Status status = Status::kOk;
};

/// Sign structure of F̂ on [t(u_lo), c/π] with u_lo = −40 − |c|/a, split at t = 0.
template <class T>
SignPartition<T> sign_partition(const LowerFamily<T>& f, double tol) {
  using std::abs;
  SignPartition<T> out;
  T u_lo = T(-40) - abs(f.c) / f.a;
  T u_hi = T(0);
  auto sc = isolate_sign_changes(std::span<const T>(f.poly), u_lo, u_hi, tol);
  out.status = sc.status;
  for (const auto& u : sc.roots) out.breakpoints.push_back(f.to_t(u));
  for (const auto& u : sc.tangential) out.uncertain.push_back(f.to_t(u));

  std::vector<T> knots{u_lo};
  for (const auto& u : sc.roots) knots.push_back(u);
  T u_zero = -f.c / f.a;  // t = 0
  if (u_lo < u_zero && u_zero < u_hi) {
    auto it = std::lower_bound(knots.begin(), knots.end(), u_zero);
    if (it == knots.end() || *it != u_zero) knots.insert(it, u_zero);
  }
  knots.push_back(u_hi);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    T mid = (knots[i] + knots[i + 1]) / T(2);
    T v = poly_eval(std::span<const T>(f.poly), mid);
    out.intervals.push_back({f.to_t(knots[i]), f.to_t(knots[i + 1]), v > 0 ? 1 : -1});
  }
  return out;
}

/// Pieces of the EP1 numerator, already multiplied by 2π (a/π) e^c so that
/// J = (negative_axis − minus_part − A·plus_part) / ‖F‖₁.
template <class T>
struct JParts {
  T negative_axis;   // 2π ∫_{−∞}^0 F̂ e^{πt}
  T minus_part;      // 2π ∫_0^∞ F̂₋ e^{πt}
  T plus_part;       // 2π ∫_0^∞ F̂₊ e^{πt}
  T ambiguous;       // bound on the mass inside uncertain-sign slivers
  Status status = Status::kOk;
};

template <class T>
JParts<T> j_parts(const LowerFamily<T>& f, double tol) {
  using std::abs;
  using std::exp;
  using std::pow;
  JParts<T> parts{T(0), T(0), T(0), T(0)};
  const T lambda = T(1) + f.a;
  const T scale = T(2) * f.a * exp(f.c);  // 2π · (a/π) · e^c
  std::span<const T> p(f.poly);

  T u_zero = -f.c / f.a;
  T u_split = u_zero < 0 ? u_zero : T(0);
  parts.negative_axis = scale * poly_exp_integral_from_minus_infinity(p, lambda, u_split);
  if (!(f.c > 0)) return parts;

  auto sc = isolate_sign_changes(p, u_zero, T(0), tol);
  parts.status = sc.status;
  std::vector<T> knots{u_zero};
  for (auto& r : sc.roots) knots.push_back(r);
  knots.push_back(T(0));
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    T val = poly_exp_integral(p, lambda, knots[i], knots[i + 1]);
    T mid = (knots[i] + knots[i + 1]) / T(2);
    if (poly_eval(p, mid) > 0) parts.plus_part += scale * val;
    else parts.minus_part -= scale * val;
  }
  for (auto& r : sc.tangential) {
    // |p e^{λu}| over the sliver [r − tol, r + tol], by the coefficient bound.
    T ar = abs(r) + T(tol);
    T m = 0;
    for (std::size_t j = p.size(); j-- > 0;) m = m * ar + abs(p[j]);
    parts.ambiguous += scale * T(2 * tol) * m;
  }
  return parts;
}

/// J_A at scalar type T: value, error radius and class/sign status.
template <class T>
ErrBounded<T> j_functional(const LowerFamily<T>& f, const Penalty<T>& A, const QuadOptions& opt) {
  using std::abs;
  ErrBounded<T> out;
  auto l1 = l1_norm(f, opt);
  if (!(l1.value > T(1e3 * epsilon_of<T>()))) {
    out.status = Status::kDegenerate;
    return out;
  }
  auto parts = j_parts(f, opt.tol);
  T numerator = parts.negative_axis - parts.minus_part;
  if (A.infinite) {
    if (parts.plus_part > 0) out.status = Status::kNotInClass;
    numerator -= parts.ambiguous;
  } else {
    numerator -= A.value * parts.plus_part;
    numerator -= (T(1) + A.value) * parts.ambiguous;
  }
  out.value = numerator / l1.value;
  out.err = to_double(abs(out.value)) * l1.err / to_double(l1.value) +
            1e3 * epsilon_of<T>() * (1 + to_double(abs(parts.negative_axis) + parts.minus_part + parts.plus_part));
  if (out.status == Status::kOk && !l1.ok()) out.status = l1.status;
  if (out.status == Status::kOk && parts.status == Status::kUncertainSign && A.infinite)
    out.status = Status::kUncertainSign;
  return out;
}

template <class T>
struct CurvePoint {
  T t;
  T value;
};

template <class T>
std::vector<CurvePoint<T>> figure_data_lower(const LowerFamily<T>& f, const T& t_lo, const T& t_hi, int samples) {
  if (samples <= 0) throw DomainError("sample count must be positive");
  std::vector<CurvePoint<T>> rows;
  rows.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    T t = samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * T(i) / T(samples - 1);
    rows.push_back({t, eval_Fhat(f, t)});
  }
  return rows;
}

// ---- certified entry points (Real at ctx.digits) --------------------------

ErrBounded<Real> l1_norm(const LowerParams& p, const PrecisionContext& ctx);
SignPartition<Real> sign_partition(const LowerParams& p, const PrecisionContext& ctx);

/// Certified lower bound for C(A): value − err ≤ J_A(F) ≤ C(A).
BoundResult lower_bound(const LowerParams& p, const Rational& A, const PrecisionContext& ctx);

}  // namespace fel
