#pragma once

// Exact antiderivatives of polynomial × exponential integrands.

#include "fel/numeric.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace fel {

/// P(u) with P'(u) = u^m e^{λu}:
///   e^{λu} Σ_{k=0}^{m} (-1)^k m!/(m-k)! u^{m-k} / λ^{k+1}.
template <class T>
T poly_exp_antiderivative(unsigned m, const T& lambda, const T& u) {
  using std::exp;
  if (lambda == 0) throw DomainError("poly_exp_antiderivative: lambda must be nonzero");
  T inv = T(1) / lambda;
  T coef = inv;  // (−1)^k m!/(m−k)! / λ^{k+1} for k = 0
  std::vector<T> c(m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    c[k] = coef;
    coef *= -T(m - k) * inv;
  }
  // c[k] multiplies u^{m-k}.
  T s = c[0];
  for (unsigned k = 1; k <= m; ++k) s = s * u + c[k];
  return exp(lambda * u) * s;
}

/// Antiderivative of p(u) e^{λu} for p given by ascending coefficients:
///   e^{λu} Σ_k (-1)^k p^{(k)}(u) / λ^{k+1}.
template <class T>
T poly_exp_primitive(std::span<const T> coeffs, const T& lambda, const T& u) {
  using std::exp;
  if (lambda == 0) throw DomainError("poly_exp_primitive: lambda must be nonzero");
  std::vector<T> d(coeffs.begin(), coeffs.end());
  T inv = T(1) / lambda;
  T scale = inv;
  T sum = 0;
  while (!d.empty()) {
    T val = 0;
    for (std::size_t j = d.size(); j-- > 0;) val = val * u + d[j];
    sum += scale * val;
    scale *= -inv;
    for (std::size_t j = 1; j < d.size(); ++j) d[j - 1] = d[j] * T(j);
    d.pop_back();
  }
  return exp(lambda * u) * sum;
}

/// ∫_lo^hi p(u) e^{λu} du.
template <class T>
T poly_exp_integral(std::span<const T> coeffs, const T& lambda, const T& lo, const T& hi) {
  return poly_exp_primitive(coeffs, lambda, hi) - poly_exp_primitive(coeffs, lambda, lo);
}

/// ∫_{-∞}^hi p(u) e^{λu} du for λ > 0.
template <class T>
T poly_exp_integral_from_minus_infinity(std::span<const T> coeffs, const T& lambda, const T& hi) {
  if (!(lambda > 0)) throw DomainError("poly_exp_integral_from_minus_infinity: lambda must be positive");
  return poly_exp_primitive(coeffs, lambda, hi);
}

}  // namespace fel
