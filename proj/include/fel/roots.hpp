#pragma once

// Sign-change isolation for real polynomials on a closed interval.
//
// The extrema of p are the sign changes of p', found recursively; between
// consecutive extrema p is monotone and has at most one root, located by
// bisection. An extremum whose value is indistinguishable from zero is a
// suspected tangential root and is reported separately.

#include "fel/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace fel {

template <class T>
struct SignChanges {
  std::vector<T> roots;        // strictly increasing points where p changes sign
  std::vector<T> tangential;   // extrema with |p| within evaluation noise
  Status status = Status::kOk;
};

template <class T>
T poly_eval(std::span<const T> c, const T& x) {
  T v = 0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
  return v;
}

/// Rounding-noise scale of evaluating p at x.
template <class T>
double poly_noise(std::span<const T> c, const T& x) {
  using std::abs;
  T ax = abs(x);
  T v = 0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * ax + abs(c[j]);
  return to_double(v) * epsilon_of<T>() * static_cast<double>(4 * c.size() + 4);
}

namespace detail {

template <class T>
std::vector<T> trimmed(std::span<const T> c) {
  std::vector<T> out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& c) {
  std::vector<T> d;
  for (std::size_t j = 1; j < c.size(); ++j) d.push_back(c[j] * T(j));
  return d;
}

inline int sign_of(double noise, double v) {
  if (std::abs(v) <= noise) return 0;
  return v > 0 ? 1 : -1;
}

template <class T>
T bisect_root(std::span<const T> c, T lo, T hi, bool lo_negative, double tol) {
  for (int it = 0; it < 4000; ++it) {
    if (to_double(hi - lo) <= tol) break;
    T mid = (lo + hi) / T(2);
    if (!(lo < mid && mid < hi)) break;
    T v = poly_eval(c, mid);
    if (v == 0) return mid;
    if ((v < 0) == lo_negative) lo = mid; else hi = mid;
  }
  return (lo + hi) / T(2);
}

template <class T>
void isolate(const std::vector<T>& c, const T& lo, const T& hi, double tol, SignChanges<T>& out) {
  using std::abs;
  if (c.size() <= 1) return;  // constant: no sign change
  if (c.size() == 2) {
    T r = -c[0] / c[1];
    if (lo < r && r < hi) out.roots.push_back(r);
    return;
  }
  SignChanges<T> crit;
  isolate(derivative(c), lo, hi, tol, crit);

  std::vector<T> knots;
  knots.push_back(lo);
  for (auto& x : crit.roots) knots.push_back(x);
  // Tangential zeros of p' may hide a close pair of extrema.
  for (auto& x : crit.tangential) knots.push_back(x);
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());

  std::span<const T> cs(c);
  const std::vector<T> c2 = derivative(derivative(c));
  std::vector<int> sgn(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    T v = poly_eval(cs, knots[i]);
    T second = poly_eval(std::span<const T>(c2), knots[i]);
    double noise = poly_noise(cs, knots[i]) + 0.5 * to_double(abs(second)) * tol * tol;
    sgn[i] = sign_of(noise, to_double(v));
    bool interior = i > 0 && i + 1 < knots.size();
    if (interior && sgn[i] == 0) {
      out.tangential.push_back(knots[i]);
      out.status = Status::kUncertainSign;
    }
  }
  // Monotone on each [knots[i], knots[i+1]]: a root exists iff the end signs differ.
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    int s0 = sgn[i];
    int s1 = sgn[i + 1];
    if (s0 != 0 && s1 != 0 && s0 != s1) {
      out.roots.push_back(bisect_root(cs, knots[i], knots[i + 1], s0 < 0, tol));
    }
  }
  // A sign change straddling a near-zero extremum: the left and right
  // neighbours disagree while the extremum itself is ambiguous.
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    if (sgn[i] != 0) continue;
    int left = 0;
    for (std::size_t j = i; j-- > 0;) if (sgn[j] != 0) { left = sgn[j]; break; }
    int right = 0;
    for (std::size_t j = i + 1; j < knots.size(); ++j) if (sgn[j] != 0) { right = sgn[j]; break; }
    if (left != 0 && right != 0 && left != right) out.roots.push_back(knots[i]);
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
}

}  // namespace detail

/// Points in (lo, hi) where the polynomial with ascending coefficients `c`
/// changes sign, each to within `tol`.
template <class T>
SignChanges<T> isolate_sign_changes(std::span<const T> c, const T& lo, const T& hi, double tol) {
  auto p = detail::trimmed(c);
  if (p.empty()) throw DomainError("isolate_sign_changes: zero polynomial");
  if (!(lo < hi)) throw DomainError("isolate_sign_changes: empty interval");
  SignChanges<T> out;
  detail::isolate(p, lo, hi, tol, out);
  std::sort(out.tangential.begin(), out.tangential.end());
  return out;
}

}  // namespace fel
