#include "fel/closed.hpp"

namespace fel {

namespace {

void require_unit_open(const Real& A, const char* who) {
  if (!(A > 0 && A < 1)) throw DomainError(std::string(who) + ": A must lie in (0, 1)");
}

void require_large_l(long l, const char* who) {
  if (l < 6) throw DomainError(std::string(who) + ": l must be at least 6");
}

}  // namespace

void FejerParams::validate() const {
  if (!(epsilon > 0)) throw DomainError("fejer: epsilon must be positive");
  if (c < 0) throw DomainError("fejer: c must be non-negative");
  if (c > 1 / epsilon) throw DomainError("fejer: c must not exceed 1/epsilon");
  if (!(A > 0 && A < 1)) throw DomainError("fejer: A must lie in (0, 1)");
}

Real theorem1_first_branch(const Real& A) {
  require_unit_open(A, "theorem1_lower");
  return 2 - 2 * (A + 1) * log((3 - A) / (A + 1)) / abs(log(A)) + 2 * A;
}

Real theorem1_lower(const Real& A) {
  Real v = theorem1_first_branch(A);
  return v > 1 ? v : Real(1);
}

Real simple_lower(const Real& A) {
  require_unit_open(A, "simple_lower");
  return 2 - 2 * log(Real(3)) / abs(log(A));
}

std::pair<Real, Real> endpoints() { return {Real(2), Real(1)}; }

Real fejer_j_closed(const FejerParams& fp) {
  fp.validate();
  const Real pi = pi_v<Real>();
  const Real& e = fp.epsilon;
  const Real& c = fp.c;
  Real v = 2 - 4 * e * exp(-pi * c) / pi - 2 * e * (pi * c - 1) / pi + 2 * e * exp(-pi * c - pi / e) / pi;
  v += 2 * fp.A * (1 - e * exp(-pi * c + pi / e) / pi - e * (pi * c - 1) / pi);
  return v;
}

FejerParams fejer_optimal(const Real& A) {
  require_unit_open(A, "fejer_optimal");
  const Real pi = pi_v<Real>();
  FejerParams fp{pi / log(1 / A), log((3 - A) / (A + 1)) / pi, A};
  fp.validate();
  return fp;
}

Real corollary4_constant(const Real& bound) {
  if (!(bound > 0)) throw DomainError("corollary4_constant: bound must be positive");
  return 1 / (bound * bound);
}

Real corollary4_largeL(long l) {
  require_large_l(l, "corollary4_largeL");
  Real L = l;
  Real x = (L / (L - 1)) * log((3 * L - 4) / L) / log(L - 1);
  Real base = 1 - x + 1 / (L - 1);
  return 1 / (4 * base * base);
}

Real corollary4_largeL_simple(long l) {
  require_large_l(l, "corollary4_largeL");
  Real base = 1 - log(Real(3)) / log(Real(l - 1));
  return 1 / (4 * base * base);
}

}  // namespace fel
