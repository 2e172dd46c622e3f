#pragma once

// Minimal complex arithmetic over any real scalar (double or Real).
// std::complex is only specified for the built-in floating types.

#include <cmath>

namespace fel {

template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const T& s) {
    re *= s;
    im *= s;
    return *this;
  }
};

template <class T>
Complex<T> operator+(Complex<T> a, const Complex<T>& b) { return a += b; }
template <class T>
Complex<T> operator-(Complex<T> a, const Complex<T>& b) { return a -= b; }
template <class T>
Complex<T> operator*(Complex<T> a, const Complex<T>& b) { return a *= b; }
template <class T>
Complex<T> operator*(Complex<T> a, const T& s) { return a *= s; }
template <class T>
Complex<T> operator*(const T& s, Complex<T> a) { return a *= s; }
template <class T>
Complex<T> operator-(const Complex<T>& a) { return {-a.re, -a.im}; }

template <class T>
T norm(const Complex<T>& z) { return z.re * z.re + z.im * z.im; }

template <class T>
T abs(const Complex<T>& z) {
  using std::sqrt;
  return sqrt(norm(z));
}

template <class T>
Complex<T> conj(const Complex<T>& z) { return {z.re, -z.im}; }

template <class T>
Complex<T> operator/(const Complex<T>& a, const Complex<T>& b) {
  T d = norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <class T>
Complex<T> operator/(const Complex<T>& a, const T& s) { return {a.re / s, a.im / s}; }

/// e^{re + i im}
template <class T>
Complex<T> exp(const Complex<T>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  T m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

}  // namespace fel
