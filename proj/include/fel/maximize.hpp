#pragma once

// Bracketed 1-D maximization (Brent's golden-section / parabolic method).

#include "fel/numeric.hpp"

#include <cmath>

namespace fel {

template <class T>
struct ScalarMax {
  T argmax{};
  T max{};
  double err = 0;   // bound on how far `max` sits below the bracketed local maximum
  Status status = Status::kOk;
};

/// Maximizes f on [lo, hi]. `tol` is the absolute goal for the maximum value;
/// the abscissa is located to about sqrt(tol). If an endpoint beats the
/// interior candidate the endpoint is returned with Status::kBoundaryMaximum.
template <class T, class F>
ScalarMax<T> maximize_scalar(F&& f, const T& lo, const T& hi, double tol) {
  using std::abs;
  using std::sqrt;
  if (!(lo < hi)) throw DomainError("maximize_scalar: empty bracket");
  const T golden = (T(3) - sqrt(T(5))) / T(2);
  const double xtol = std::max(std::sqrt(tol), 10 * std::sqrt(epsilon_of<T>()) * 1e-3);

  T a = lo;
  T b = hi;
  T x = a + golden * (b - a);
  T w = x;
  T v = x;
  T fx = -f(x);
  T fw = fx;
  T fv = fx;
  T d = 0;
  T e = 0;
  for (int iter = 0; iter < 500; ++iter) {
    T m = (a + b) / T(2);
    T tol1 = T(xtol) + T(epsilon_of<T>()) * abs(x);
    T tol2 = T(2) * tol1;
    if (abs(x - m) <= tol2 - (b - a) / T(2)) break;
    bool golden_step = true;
    if (abs(e) > tol1) {
      T r = (x - w) * (fx - fv);
      T q = (x - v) * (fx - fw);
      T p = (x - v) * q - (x - w) * r;
      q = T(2) * (q - r);
      if (q > 0) p = -p; else q = -q;
      T etemp = e;
      e = d;
      if (abs(p) < abs(q * etemp / T(2)) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        T u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = x < m ? b - x : a - x;
      d = golden * e;
    }
    T u = abs(d) >= tol1 ? x + d : (d > 0 ? x + tol1 : x - tol1);
    T fu = -f(u);
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }

  ScalarMax<T> out;
  out.argmax = x;
  out.max = -fx;
  T flo = f(lo);
  T fhi = f(hi);
  if (flo >= out.max) {
    out.argmax = lo;
    out.max = flo;
    out.status = Status::kBoundaryMaximum;
  }
  if (fhi > out.max) {
    out.argmax = hi;
    out.max = fhi;
    out.status = Status::kBoundaryMaximum;
  }
  out.err = tol;
  return out;
}

}  // namespace fel
