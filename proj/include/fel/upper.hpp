#pragma once

// Upper bounds for C*(A) from the alternating step family
//
//   ψ(x) = c_n e^{πx} on [T_n, T_{n+1}),  c_n = A (n even), −1 (n odd),
//
// with g_A(t) = 2/(1−2it) − Σ_n 2c_n (E_{n+1} − E_n)/(1−2it), E_n = e^{(π−2πit)T_n}.
// The sup norm of g_A is certified by branch and bound with first and second
// derivative bounds, plus a closed-form majorant beyond a cutoff.

#include "fel/bound.hpp"
#include "fel/complex.hpp"
#include "fel/decimal.hpp"
#include "fel/maximize.hpp"
#include "fel/poly_exp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fel {

/// Abscissa used when reporting maxima and figure rows: the natural t of
/// g_A, or t/π.
enum class Axis { kNatural, kOverPi };

struct UpperParams {
  Rational A{"0"};
  std::vector<Decimal> T;  // T_1 < ... < T_N, T_0 = 0 implied

  /// T strictly increasing and positive; A = ∞ only with N = 0.
  void validate() const;
};

/// Drops zero-length pieces (equal consecutive breakpoints) while keeping
/// the coefficient alternation. A zero first gap cannot be removed.
UpperParams canonicalize(const UpperParams& p);

template <class T>
struct UpperFamily {
  T A;
  std::vector<T> knots;  // T_0 = 0, T_1, ..., T_N
  std::vector<T> coef;   // c_0 .. c_{N-1}
  // g(t)(1 − 2it) = 2 + Σ_k w_k e^{−2πi t T_k}, w_k = 2(c_k − c_{k−1}) e^{πT_k}
  std::vector<T> weight;

  UpperFamily(T A_, std::vector<T> T_) : A(std::move(A_)) {
    using std::exp;
    knots.push_back(T(0));
    for (auto& x : T_) knots.push_back(std::move(x));
    const std::size_t N = knots.size() - 1;
    for (std::size_t n = 0; n < N; ++n) coef.push_back(n % 2 == 0 ? A : T(-1));
    const T pi = pi_v<T>();
    for (std::size_t k = 0; k <= N; ++k) {
      T ck = k < N ? coef[k] : T(0);
      T ckm = k > 0 ? coef[k - 1] : T(0);
      weight.push_back(T(2) * (ck - ckm) * exp(pi * knots[k]));
    }
  }

  static UpperFamily from(const UpperParams& p) {
    std::vector<T> t;
    for (const auto& d : p.T) t.push_back(d.as<T>());
    return UpperFamily(p.A.infinite() ? T(0) : p.A.as<T>(), std::move(t));
  }

  std::size_t pieces() const { return coef.size(); }
};

/// 2π ∫_lo^hi coef e^{πx} e^{−2πixt} dx.
template <class T>
Complex<T> piece_transform(const T& coef, const T& lo, const T& hi, const T& t) {
  const T pi = pi_v<T>();
  Complex<T> z(pi, -T(2) * pi * t);
  Complex<T> d(T(1), -T(2) * t);
  return (exp(z * hi) - exp(z * lo)) * (T(2) * coef) / d;
}

template <class T>
Complex<T> eval_gA(const UpperFamily<T>& f, const T& t) {
  const T two_pi_t = T(2) * pi_v<T>() * t;
  Complex<T> num(T(2));
  T s, c;
  for (std::size_t k = 0; k < f.knots.size(); ++k) {
    if (f.weight[k] == 0) continue;
    sin_cos(two_pi_t * f.knots[k], s, c);
    num.re += f.weight[k] * c;
    num.im -= f.weight[k] * s;
  }
  return num / Complex<T>(T(1), -T(2) * t);
}

template <class T>
T abs_gA(const UpperFamily<T>& f, const T& t) {
  return abs(eval_gA(f, t));
}

/// Σ_n |c_n| ∫_{T_n}^{T_{n+1}} x^m e^{πx} dx.
template <class T>
T weighted_moment(const UpperFamily<T>& f, unsigned m) {
  using std::abs;
  const T pi = pi_v<T>();
  T s = 0;
  for (std::size_t n = 0; n < f.pieces(); ++n) {
    if (f.coef[n] == 0) continue;
    s += abs(f.coef[n]) *
         (poly_exp_antiderivative(m, pi, f.knots[n + 1]) - poly_exp_antiderivative(m, pi, f.knots[n]));
  }
  return s;
}

/// sup |g_A|: 2π(∫_{−∞}^0 e^{πx} + Σ|c_n|∫ e^{πx}).
template <class T>
T sup_bound(const UpperFamily<T>& f) {
  const T pi = pi_v<T>();
  return T(2) + T(2) * pi * weighted_moment(f, 0);
}

/// L ≥ sup |g_A'| = 4π²(∫_{−∞}^0 |x| e^{πx} + Σ|c_n| ∫ x e^{πx}).
template <class T>
T lipschitz_bound(const UpperFamily<T>& f) {
  const T pi = pi_v<T>();
  return T(4) * pi * pi * (T(1) / (pi * pi) + weighted_moment(f, 1));
}

/// ≥ sup |g_A''| = 8π³(∫_{−∞}^0 x² e^{πx} + Σ|c_n| ∫ x² e^{πx}).
template <class T>
T second_derivative_bound(const UpperFamily<T>& f) {
  const T pi = pi_v<T>();
  return T(8) * pi * pi * pi * (T(2) / (pi * pi * pi) + weighted_moment(f, 2));
}

/// Numerator of the tail majorant: 2 + 2Σ|c_n|(e^{πT_{n+1}} + e^{πT_n}).
template <class T>
T tail_numerator(const UpperFamily<T>& f) {
  using std::abs;
  using std::exp;
  const T pi = pi_v<T>();
  T s = 2;
  for (std::size_t n = 0; n < f.pieces(); ++n)
    s += T(2) * abs(f.coef[n]) * (exp(pi * f.knots[n + 1]) + exp(pi * f.knots[n]));
  return s;
}

/// M(t) ≥ |g_A(t')| for every |t'| ≥ t; decreasing in t > 0.
template <class T>
T tail_majorant(const UpperFamily<T>& f, const T& t) {
  using std::sqrt;
  if (!(t > 0)) throw DomainError("tail_majorant: t must be positive");
  return tail_numerator(f) / sqrt(T(1) + T(4) * t * t);
}

/// Smallest t with M(t) ≤ level.
template <class T>
T tail_cutoff(const UpperFamily<T>& f, const T& level) {
  using std::sqrt;
  T r = tail_numerator(f) / level;
  if (!(r > 1)) return T(0);
  return sqrt(r * r - T(1)) / T(2);
}

template <class T>
struct CertifiedSup {
  T value;           // largest |g_A| actually evaluated
  T upper;           // certified bound for the sup over [lo, ∞)
  T argmax;
  T t_max;           // majorant cutoff
  T lipschitz;
  T curvature;       // bound on |(|g|²)''|
  double grid_step = 0;
  long evaluations = 0;
  long cells = 0;
  Status status = Status::kOk;
};

/// Certified sup of |g_A| over [lo, ∞) (and, by symmetry, over |t| ≥ lo).
///
/// [lo, t_max] is covered by a grid of step `grid_step`; each cell [u, v]
/// gets the bound min((|g(u)|+|g(v)|)/2 + L(v−u)/2, sqrt(max(h(u),h(v)) + K(v−u)²/8))
/// with h = |g|², K ≥ sup|h''|. Cells whose bound exceeds the incumbent by more
/// than `tol` are bisected.
template <class T>
CertifiedSup<T> certified_sup(const UpperFamily<T>& f, const T& lo, double grid_step, double tol,
                              long max_evaluations) {
  using std::abs;
  using std::max;
  using std::min;
  using std::sqrt;
  CertifiedSup<T> out;
  out.grid_step = grid_step;
  const T L = lipschitz_bound(f);
  const T G0 = sup_bound(f);
  const T L2 = second_derivative_bound(f);
  const T K = T(2) * (L * L + G0 * L2);
  out.lipschitz = L;
  out.curvature = K;

  auto eval = [&](const T& t) {
    ++out.evaluations;
    return abs_gA(f, t);
  };

  // incumbent from a short probe, used only to place the cutoff
  T best = eval(lo);
  T best_t = lo;
  for (int k = 1; k <= 64; ++k) {
    T t = lo + T(k) * T(0.05);
    T v = eval(t);
    if (v > best) best = v, best_t = t;
  }
  T t_max = tail_cutoff(f, best);
  if (t_max < lo) t_max = lo;
  out.t_max = t_max;

  struct Cell {
    T u, v, gu, gv;
  };
  auto bound = [&](const Cell& c) {
    T w = c.v - c.u;
    T lip = (c.gu + c.gv) / T(2) + L * w / T(2);
    T hm = max(c.gu * c.gu, c.gv * c.gv);
    T quad = sqrt(hm + K * w * w / T(8));
    return min(lip, quad);
  };

  T discarded = T(0);
  std::vector<Cell> work;
  long n_cells = static_cast<long>(std::ceil(to_double((t_max - lo) / T(grid_step))));
  if (n_cells < 1) n_cells = 1;
  T h = (t_max - lo) / T(n_cells);
  if (!(h > 0)) h = T(grid_step);
  std::vector<T> grid_vals(static_cast<std::size_t>(n_cells) + 1);
  for (long i = 0; i <= n_cells; ++i) {
    T t = lo + h * T(i);
    grid_vals[i] = eval(t);
    if (grid_vals[i] > best) best = grid_vals[i], best_t = t;
  }
  for (long i = 0; i < n_cells; ++i) {
    Cell c{lo + h * T(i), lo + h * T(i + 1), grid_vals[i], grid_vals[i + 1]};
    T ub = bound(c);
    if (ub > best + T(tol)) work.push_back(std::move(c));
    else discarded = max(discarded, ub);
  }
  out.cells = n_cells;

  while (!work.empty()) {
    if (out.evaluations > max_evaluations) {
      out.status = Status::kUnconverged;
      break;
    }
    Cell c = std::move(work.back());
    work.pop_back();
    T ub = bound(c);
    if (!(ub > best + T(tol))) {
      discarded = max(discarded, ub);
      continue;
    }
    T m = (c.u + c.v) / T(2);
    T gm = eval(m);
    ++out.cells;
    if (gm > best) best = gm, best_t = m;
    work.push_back({m, c.v, gm, c.gv});
    work.push_back({c.u, m, c.gu, gm});
  }
  for (const auto& c : work) discarded = max(discarded, bound(c));  // only on budget exit

  out.value = best;
  out.argmax = best_t;
  // rounding in each evaluation is relative to the sup bound G0
  T rounding = G0 * T(1e3 * epsilon_of<T>());
  out.upper = max(best, discarded) + rounding;
  return out;
}

template <class T>
struct LocalMax {
  T t;
  T value;
  Status status = Status::kOk;
};

/// Local maxima of |g_A| on [lo, hi] (in `axis` units): grid scan at step
/// `step`, each candidate refined with maximize_scalar.
template <class T>
std::vector<LocalMax<T>> local_maxima(const UpperFamily<T>& f, const T& lo, const T& hi, Axis axis, double step,
                                      double tol) {
  if (!(lo < hi)) throw DomainError("local_maxima: empty interval");
  const T scale = axis == Axis::kOverPi ? pi_v<T>() : T(1);
  auto val = [&](const T& x) { return abs_gA(f, x * scale); };
  long n = static_cast<long>(std::ceil(to_double((hi - lo) / T(step))));
  if (n < 2) n = 2;
  T h = (hi - lo) / T(n);
  std::vector<T> v(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) v[i] = val(lo + h * T(i));

  std::vector<LocalMax<T>> out;
  for (long i = 0; i <= n; ++i) {
    bool left_ok = i == 0 || v[i] >= v[i - 1];
    bool right_ok = i == n || v[i] > v[i + 1];
    if (!(left_ok && right_ok)) continue;
    T a = i == 0 ? lo : lo + h * T(i - 1);
    T b = i == n ? hi : lo + h * T(i + 1);
    auto r = maximize_scalar(val, a, b, tol);
    LocalMax<T> m{r.argmax, r.max, Status::kOk};
    // an endpoint of [lo, hi] is a genuine maximum only via the even symmetry at 0
    bool at_zero = lo == 0 && r.argmax == lo;
    if (r.status == Status::kBoundaryMaximum && !at_zero) continue;
    if (!out.empty() && abs(out.back().t - m.t) < T(h)) {
      if (m.value > out.back().value) out.back() = m;
      continue;
    }
    out.push_back(m);
  }
  return out;
}

template <class T>
struct UpperCurvePoint {
  T x;        // abscissa in the requested axis
  T re;       // Re g_A
  T modulus;  // |g_A|
};

template <class T>
std::vector<UpperCurvePoint<T>> figure_data_upper(const UpperFamily<T>& f, const T& lo, const T& hi, int samples,
                                                  Axis axis) {
  if (samples <= 0) throw DomainError("sample count must be positive");
  const T scale = axis == Axis::kOverPi ? pi_v<T>() : T(1);
  std::vector<UpperCurvePoint<T>> rows;
  rows.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    T x = samples == 1 ? lo : lo + (hi - lo) * T(i) / T(samples - 1);
    auto g = eval_gA(f, x * scale);
    rows.push_back({x, g.re, abs(g)});
  }
  return rows;
}

/// Quick sup estimate for search loops: coarse grid plus Brent refinement of
/// every sample that could hide the maximum. Not certified.
template <class T>
T fast_sup(const UpperFamily<T>& f, double step = 0.02) {
  const T g0 = abs_gA(f, T(0));
  const T t_max = tail_cutoff(f, g0);
  if (!(t_max > T(step))) return g0 > tail_numerator(f) ? g0 : tail_numerator(f);  // majorant bounds everything
  long n = static_cast<long>(std::ceil(to_double(t_max / T(step))));
  if (n < 2) n = 2;
  T h = t_max / T(n);
  std::vector<T> v(static_cast<std::size_t>(n) + 1);
  T grid_max = 0;
  for (long i = 0; i <= n; ++i) {
    v[i] = abs_gA(f, h * T(i));
    if (v[i] > grid_max) grid_max = v[i];
  }
  // a maximum between samples exceeds them by at most K h²/8 in |g|²; use a generous margin
  const T margin = T(0.05);
  T best = grid_max;
  auto val = [&](const T& t) { return abs_gA(f, t); };
  for (long i = 1; i < n; ++i) {
    if (!(v[i] >= v[i - 1] && v[i] >= v[i + 1])) continue;
    if (v[i] < grid_max - margin) continue;
    auto r = maximize_scalar(val, h * T(i - 1), h * T(i + 1), 1e-14);
    if (r.max > best) best = r.max;
  }
  return best;
}

// ---- certified entry points (Real at ctx.digits) --------------------------

struct SupOptions {
  double grid_step = 1e-4;
  double tol = 1e-10;            // branch-and-bound slack over the incumbent
  long max_evaluations = 20000000;
};

/// Certified upper bound for ‖g_A‖_∞ (hence for C*(A) and C(A)).
BoundResult sup_norm(const UpperParams& p, const PrecisionContext& ctx, const SupOptions& opt = {});

/// Certified upper bound for sup_{|t| ≥ lo} |g_A(t)|, lo in natural units.
BoundResult sup_beyond(const UpperParams& p, const Real& lo, const PrecisionContext& ctx,
                       const SupOptions& opt = {});

std::vector<LocalMax<Real>> local_maxima(const UpperParams& p, const Real& lo, const Real& hi,
                                         const PrecisionContext& ctx, Axis axis = Axis::kNatural);

}  // namespace fel
