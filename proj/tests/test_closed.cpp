#include "fel/closed.hpp"
#include "fel/quadrature.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace fel;
using fel::test::diff;

namespace {

// J_A of F̂(t) = (1 − ε|t + c|)₊ by quadrature; ‖F‖₁ = 1 for the Fejér kernel.
Real fejer_j_quadrature(const FejerParams& fp) {
  const Real pi = pi_v<Real>();
  auto f = [&](const Real& t) {
    Real v = 1 - fp.epsilon * abs(t + fp.c);
    return (v > 0 ? v : Real(0)) * exp(pi * t);
  };
  QuadOptions opt{1e-32, 4000};
  Real lo = -fp.c - 1 / fp.epsilon, peak = -fp.c, hi = -fp.c + 1 / fp.epsilon;
  Real neg = integrate_finite(f, lo, peak, opt).value + integrate_finite(f, peak, Real(0), opt).value;
  Real pos = integrate_finite(f, Real(0), hi, opt).value;
  return 2 * pi * (neg - fp.A * pos);
}

}  // namespace

TEST_CASE("first branch and its floor at 1") {
  ScopedPrecision guard(40);
  Real q = Real(1) / 4;
  Real expected = Real("2.5") - Real("2.5") * log(Real("2.2")) / log(Real(4));
  CHECK(diff(theorem1_first_branch(q), expected) < 1e-35);
  CHECK(diff(theorem1_lower(q), Real("1.0779")) < 1e-3);
  Real h = Real(1) / 2;
  CHECK(diff(theorem1_first_branch(h), 3 - 3 * log(Real(5) / 3) / log(Real(2))) < 1e-35);
  CHECK(diff(theorem1_first_branch(h), Real("0.789")) < 1e-3);
  CHECK(theorem1_lower(h) == 1);
  // A → 0⁺ drives the first branch to 2
  CHECK(theorem1_first_branch(Real("1e-300")) > Real("1.99"));
  CHECK(theorem1_first_branch(Real("1e-300")) < 2);
  for (const char* bad : {"0", "1", "-0.5", "2"}) {
    CHECK_THROWS_AS(theorem1_lower(Real(bad)), DomainError);
    CHECK_THROWS_AS(simple_lower(Real(bad)), DomainError);
  }
}

TEST_CASE("simple lower bound: exact cases and its weakness") {
  ScopedPrecision guard(40);
  CHECK(diff(simple_lower(Real(1) / 9), Real(1)) < 1e-37);
  CHECK(diff(simple_lower(Real(1) / 27), Real(4) / 3) < 1e-37);
  CHECK(diff(simple_lower(Real(1) / 4), Real("0.4150")) < 1e-4);
  for (int i = 1; i < 1000; ++i) {
    Real A = Real(i) / 1000;
    CHECK(simple_lower(A) <= theorem1_lower(A));
  }
}

TEST_CASE("endpoint values") {
  auto [c0, cinf] = endpoints();
  CHECK(c0 == 2);
  CHECK(cinf == 1);
}

TEST_CASE("optimal Fejér parameters") {
  ScopedPrecision guard(40);
  const Real pi = pi_v<Real>();
  auto one = fejer_optimal(exp(-pi));
  CHECK(diff(one.epsilon, Real(1)) < 1e-37);
  auto q = fejer_optimal(Real(1) / 4);
  CHECK(diff(q.epsilon, pi / log(Real(4))) < 1e-37);
  for (int i = 1; i < 100; ++i) {
    auto fp = fejer_optimal(Real(i) / 100);
    CHECK(fp.c >= 0);
    CHECK(fp.c <= 1 / fp.epsilon);
  }
}

TEST_CASE("closed form at the optimum is the first branch") {
  ScopedPrecision guard(40);
  for (int i = 1; i < 100; ++i) {
    Real A = Real(i) / 100;
    CHECK(diff(fejer_j_closed(fejer_optimal(A)), theorem1_first_branch(A)) < 1e-12);
    CHECK(diff(fejer_j_closed(fejer_optimal(A)), theorem1_first_branch(A)) < 1e-35);
  }
}

TEST_CASE("closed form against quadrature on random Fejér parameters") {
  ScopedPrecision guard(40);
  auto gen = fel::test::rng(31337);
  std::uniform_real_distribution<double> ue(0.2, 4), uu(0, 1), ua(0.01, 0.99);
  for (int k = 0; k < 30; ++k) {
    FejerParams fp{Real(ue(gen)), Real(0), Real(ua(gen))};
    fp.c = Real(uu(gen)) / fp.epsilon;
    CHECK(diff(fejer_j_closed(fp), fejer_j_quadrature(fp)) < 1e-28);
  }
}

TEST_CASE("Fejér parameter validation") {
  ScopedPrecision guard(40);
  CHECK_THROWS_AS(fejer_j_closed(FejerParams{Real(1), Real("1.5"), Real("0.5")}), DomainError);
  CHECK_THROWS_AS(fejer_j_closed(FejerParams{Real(0), Real(0), Real("0.5")}), DomainError);
  CHECK_THROWS_AS(fejer_j_closed(FejerParams{Real(1), Real("-0.1"), Real("0.5")}), DomainError);
  CHECK_THROWS_AS(fejer_j_closed(FejerParams{Real(1), Real("0.1"), Real(1)}), DomainError);
}

TEST_CASE("implied constants") {
  ScopedPrecision guard(40);
  Real k = corollary4_constant(Real("1.14600"));
  CHECK(k < Real("0.7615"));
  CHECK(diff(k, Real("0.7614313")) < 1e-7);
  CHECK(corollary4_constant(Real("1.06082")) < Real(8) / 9);
  CHECK(diff(corollary4_constant(Real("1.22112")), Real("0.6706")) < 1e-4);
  Real prev = corollary4_constant(Real("0.5"));
  for (int i = 51; i < 300; ++i) {
    Real v = corollary4_constant(Real(i) / 100);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(corollary4_constant(Real(0)), DomainError);
  CHECK_THROWS_AS(corollary4_constant(Real(-1)), DomainError);
}

TEST_CASE("large-order formulas") {
  ScopedPrecision guard(40);
  for (long l = 6; l <= 100; ++l) {
    CHECK(corollary4_largeL(l) <= corollary4_largeL_simple(l));
    // the sharper formula is the first branch at A = 1/(ℓ−1), squared and inverted
    Real b = theorem1_first_branch(Real(1) / Real(l - 1));
    CHECK(diff(corollary4_largeL(l), 1 / (b * b)) < 1e-35);
  }
  Real prev = corollary4_largeL(6);
  for (long l : {10L, 100L, 1000L, 1000000L, 1000000000000L, 1000000000000000000L}) {
    Real v = corollary4_largeL(l);
    CHECK(v < prev);
    CHECK(v > Real(1) / 4);
    prev = v;
  }
  CHECK(diff(corollary4_largeL(1000000), Real("0.29506")) < 1e-4);
  CHECK_THROWS_AS(corollary4_largeL(5), DomainError);
  CHECK_THROWS_AS(corollary4_largeL_simple(2), DomainError);
}
