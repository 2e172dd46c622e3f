#pragma once

// Adaptive Gauss-Legendre quadrature at arbitrary precision.
//
// Each panel is integrated with a 20-point and a 40-point rule; the difference
// is taken as the panel error (a strong over-estimate for the 40-point value on
// analytic integrands). Panels are bisected worst-first until the summed error
// reaches the requested tolerance.

#include "fel/complex.hpp"
#include "fel/numeric.hpp"

#include <cmath>
#include <map>
#include <algorithm>
#include <type_traits>
#include <utility>
#include <vector>

namespace fel {

struct QuadOptions {
  double tol = 1e-30;
  int max_panels = 4000;

  static QuadOptions from(const PrecisionContext& ctx) { return {ctx.target_abs_err, 4000}; }
};

enum class Direction { kPlusInfinity, kMinusInfinity };

template <class T>
struct GaussRule {
  std::vector<T> nodes;    // on [-1, 1]
  std::vector<T> weights;
};

template <class T>
GaussRule<T> make_gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  GaussRule<T> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const T pi = pi_v<T>();
  const double eps = epsilon_of<T>();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    T x = cos(pi * T(4 * i + 3) / T(4 * n + 2));
    T dp = 0;
    for (int it = 0; it < 100; ++it) {
      T p0 = 1;
      T p1 = x;
      for (int k = 2; k <= n; ++k) {
        T p2 = (T(2 * k - 1) * x * p1 - T(k - 1) * p0) / T(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      dp = T(n) * (x * p1 - p0) / (x * x - T(1));
      T dx = p1 / dp;
      x -= dx;
      if (abs(to_double(dx)) < 10 * eps) break;
    }
    T w = T(2) / ((T(1) - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Rule cached per thread and per working precision.
template <class T>
const GaussRule<T>& gauss_legendre(int n) {
  if constexpr (std::is_same_v<T, Real>) {
    thread_local std::map<std::pair<int, unsigned>, GaussRule<Real>> cache;
    auto key = std::make_pair(n, Real::default_precision());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_gauss_legendre<Real>(n)).first;
    return it->second;
  } else {
    thread_local std::map<int, GaussRule<T>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre<T>(n)).first;
    return it->second;
  }
}

namespace detail {

template <class V>
double magnitude(const V& v) {
  using std::abs;
  return to_double(abs(v));
}

template <class T, class V, class F>
std::pair<V, double> panel(F& f, const T& a, const T& b) {
  const auto& lo = gauss_legendre<T>(20);
  const auto& hi = gauss_legendre<T>(40);
  T half = (b - a) / T(2);
  T mid = (a + b) / T(2);
  V s20{};
  V s40{};
  for (std::size_t i = 0; i < lo.nodes.size(); ++i) s20 += f(mid + half * lo.nodes[i]) * lo.weights[i];
  for (std::size_t i = 0; i < hi.nodes.size(); ++i) s40 += f(mid + half * hi.nodes[i]) * hi.weights[i];
  s20 *= half;
  s40 *= half;
  return {s40, magnitude(s40 - s20)};
}

}  // namespace detail

/// ∫_a^b f. The integrand may return T or Complex<T>.
template <class T, class F>
auto integrate_finite(F&& f, const T& a, const T& b, const QuadOptions& opt)
    -> ErrBounded<std::decay_t<decltype(f(a))>> {
  using V = std::decay_t<decltype(f(a))>;
  ErrBounded<V> out;
  out.value = V{};
  if (!(a < b)) {
    if (b < a) throw DomainError("integrate_finite: a > b");
    return out;
  }

  struct Piece {
    T a, b;
    V value;
    double err;
  };
  auto cmp = [](const Piece& x, const Piece& y) { return x.err < y.err; };
  std::vector<Piece> heap;
  auto exact_err = [&] {
    double s = 0;
    for (const auto& p : heap) s += p.err;
    return s;
  };

  double total_err = 0;
  {
    auto [v, e] = detail::panel<T, V>(f, a, b);
    heap.push_back({a, b, v, e});
    total_err = e;
  }
  int panels = 1;
  const double eps = epsilon_of<T>();
  while (panels < opt.max_panels) {
    if (total_err <= opt.tol) {
      // the running sum drifts through cancellation; confirm before stopping
      total_err = exact_err();
      if (total_err <= opt.tol) break;
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Piece worst = heap.back();
    T m = (worst.a + worst.b) / T(2);
    if (!(worst.a < m && m < worst.b)) {  // interval exhausted at this precision
      std::push_heap(heap.begin(), heap.end(), cmp);
      break;
    }
    heap.pop_back();
    auto [v1, e1] = detail::panel<T, V>(f, worst.a, m);
    auto [v2, e2] = detail::panel<T, V>(f, m, worst.b);
    total_err += e1 + e2 - worst.err;
    heap.push_back({worst.a, m, v1, e1});
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back({m, worst.b, v2, e2});
    std::push_heap(heap.begin(), heap.end(), cmp);
    ++panels;
  }

  double rounding = 0;
  double err_sum = 0;
  for (const auto& p : heap) {
    out.value += p.value;
    rounding += detail::magnitude(p.value);
    err_sum += p.err;
  }
  if (err_sum > opt.tol) out.status = Status::kUnconverged;
  out.err = err_sum + 100 * eps * rounding;
  return out;
}

/// ∫_a^{±∞} f given `tail(X)`, a closed-form upper bound for ∫ |f| beyond X.
///
/// The cutoff is found by doubling the distance from `a` until the tail is
/// below tol/2; the finite part is split into geometrically growing chunks
/// so that slowly decaying integrands stay well resolved.
template <class T, class F, class Tail>
auto integrate_semi_infinite(F&& f, const T& a, Direction dir, Tail&& tail, const QuadOptions& opt)
    -> ErrBounded<std::decay_t<decltype(f(a))>> {
  using V = std::decay_t<decltype(f(a))>;
  const T sign = dir == Direction::kPlusInfinity ? T(1) : T(-1);
  ErrBounded<V> out;
  out.value = V{};

  T width = 1;
  T cutoff = a + sign * width;
  int doublings = 0;
  const int kMaxDoublings = 400;
  while (to_double(tail(cutoff)) > opt.tol / 2) {
    if (++doublings > kMaxDoublings) {
      out.status = Status::kUnconverged;
      out.err = to_double(tail(cutoff));
      return out;
    }
    width *= 2;
    cutoff = a + sign * width;
  }
  const double tail_err = to_double(tail(cutoff));

  const int chunks = doublings + 1;
  QuadOptions sub = opt;
  sub.tol = opt.tol / 2 / chunks;
  T lo = a;
  T w = 1;
  for (int k = 0; k < chunks; ++k) {
    T hi = a + sign * w;
    ErrBounded<V> part = dir == Direction::kPlusInfinity
                             ? integrate_finite(f, lo, hi, sub)
                             : integrate_finite(f, hi, lo, sub);
    out.value += part.value;
    out.err += part.err;
    if (!part.ok()) out.status = part.status;
    lo = hi;
    w *= 2;
  }
  out.err += tail_err;
  return out;
}

template <class T, class F>
auto integrate_finite(F&& f, const T& a, const T& b, const PrecisionContext& ctx) {
  return integrate_finite(std::forward<F>(f), a, b, QuadOptions::from(ctx));
}

}  // namespace fel
