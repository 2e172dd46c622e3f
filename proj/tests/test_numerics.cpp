#include "fel/decimal.hpp"
#include "fel/maximize.hpp"
#include "fel/poly_exp.hpp"
#include "fel/quadrature.hpp"
#include "fel/roots.hpp"

#include "support.hpp"

#include <doctest.h>

#include <array>

using namespace fel;
using fel::test::diff;

TEST_CASE("decimal literals parse exactly and reject junk") {
  CHECK(Decimal("0.246").str() == "0.246");
  CHECK(Decimal("-1e-3").to_double() == -1e-3);
  CHECK(Decimal("+.5").to_double() == 0.5);
  CHECK(Decimal("0.0").is_zero());
  CHECK_FALSE(Decimal("0.0001").is_zero());
  CHECK(Decimal("-2.5").negated().str() == "2.5");
  CHECK(Decimal("2.5").negated().str() == "-2.5");
  for (const char* bad : {"", "-", ".", "1.2.3", "1e", "abc", "1,5", " 1"}) CHECK_THROWS_AS(Decimal{bad}, DomainError);

  ScopedPrecision guard(50);
  Real x = Decimal("0.1").to_real();
  CHECK(diff(x * 10, Real(1)) < 1e-49);  // not the binary 0.1
}

TEST_CASE("from_double round-trips") {
  for (double v : {0.1, -3.25, 1e-300, 123456.789, 0.15184549095662228}) {
    CHECK(Decimal::from_double(v).to_double() == v);
  }
}

TEST_CASE("rational penalties") {
  ScopedPrecision guard(40);
  CHECK(diff(Rational("1/3").to_real(), Real(1) / 3) == 0);
  CHECK(Rational("inf").infinite());
  CHECK(Rational("3").to_double() == 3);
  CHECK(Rational("0").to_double() == 0);
  CHECK_THROWS_AS(Rational("1/0"), DomainError);
  CHECK_THROWS_AS(Rational("-1"), DomainError);
  CHECK_THROWS_AS(Rational("1/-2"), DomainError);
  CHECK_THROWS_AS(Rational("x/2"), DomainError);
}

TEST_CASE("precision context invariants") {
  CHECK_NOTHROW(PrecisionContext::with_digits(30).validate());
  CHECK_THROWS_AS(PrecisionContext::with_digits(29).validate(), DomainError);
  PrecisionContext ctx{40, 1e-36};
  CHECK_THROWS_AS(ctx.validate(), DomainError);  // fewer than 5 guard digits
  ctx.target_abs_err = 1e-35;
  CHECK_NOTHROW(ctx.validate());
}

TEST_CASE("scoped precision restores the previous default") {
  unsigned before = Real::default_precision();
  {
    ScopedPrecision a(80);
    CHECK(Real::default_precision() == 80);
    {
      ScopedPrecision b(35);
      CHECK(Real::default_precision() == 35);
    }
    CHECK(Real::default_precision() == 80);
  }
  CHECK(Real::default_precision() == before);
}

TEST_CASE("finite quadrature: exponential against its antiderivative") {
  ScopedPrecision guard(40);
  const Real pi = pi_v<Real>();
  auto r = integrate_finite([&](const Real& t) { return exp(pi * t); }, Real(0), Real(1), QuadOptions{1e-32, 4000});
  Real exact = (exp(pi) - 1) / pi;
  REQUIRE(r.ok());
  CHECK(diff(r.value, exact) <= std::max(r.err, 1e-32));
  CHECK(diff(r.value, Real("7.0476013519702617477")) < 1e-18);
}

TEST_CASE("finite quadrature: empty interval") {
  ScopedPrecision guard(40);
  auto r = integrate_finite([](const Real& t) { return t; }, Real(2), Real(2), QuadOptions{});
  CHECK(r.ok());
  CHECK(r.value == 0);
  CHECK(r.err == 0);
}

TEST_CASE("finite quadrature: triangle against the polynomial-exponential primitive") {
  ScopedPrecision guard(40);
  const Real pi = pi_v<Real>();
  auto f = [&](const Real& t) { return (1 - abs(t)) * exp(pi * t); };
  auto r = integrate_finite(f, Real(-1), Real(0), QuadOptions{1e-32, 4000});
  std::array<Real, 2> p{Real(1), Real(1)};  // 1 + t on [−1, 0]
  Real exact = poly_exp_integral(std::span<const Real>(p), pi, Real(-1), Real(0));
  CHECK(diff(r.value, exact) < 1e-30);
}

TEST_CASE("finite quadrature: complex integrand") {
  ScopedPrecision guard(40);
  // ∫_0^1 e^{it} dt = (e^{i} − 1)/i = sin 1 + i(1 − cos 1)
  auto r = integrate_finite([](const Real& t) { return Complex<Real>(cos(t), sin(t)); }, Real(0), Real(1),
                            QuadOptions{1e-32, 4000});
  CHECK(diff(r.value.re, sin(Real(1))) < 1e-31);
  CHECK(diff(r.value.im, 1 - cos(Real(1))) < 1e-31);
}

TEST_CASE("finite quadrature: unconverged is reported, not hidden") {
  ScopedPrecision guard(40);
  auto r = integrate_finite([](const Real& t) { return sqrt(t); }, Real(0), Real(1), QuadOptions{1e-35, 3});
  CHECK(r.status == Status::kUnconverged);
}

TEST_CASE("semi-infinite quadrature with closed-form majorants") {
  ScopedPrecision guard(40);
  const Real pi = pi_v<Real>();
  auto plus = integrate_semi_infinite([](const Real& t) { return exp(-t); }, Real(0), Direction::kPlusInfinity,
                                      [](const Real& X) { return exp(-X); }, QuadOptions{1e-30, 4000});
  CHECK(plus.ok());
  CHECK(diff(plus.value, Real(1)) <= std::max(plus.err, 1e-30));

  auto minus = integrate_semi_infinite([&](const Real& t) { return exp(pi * t); }, Real(0),
                                       Direction::kMinusInfinity, [&](const Real& X) { return exp(pi * X) / pi; },
                                       QuadOptions{1e-30, 4000});
  CHECK(minus.ok());
  CHECK(diff(minus.value, 1 / pi) < 1e-29);

  // slowly decaying: ∫_0^∞ dt/(1+t²) = π/2
  auto slow = integrate_semi_infinite([](const Real& t) { return 1 / (1 + t * t); }, Real(0),
                                      Direction::kPlusInfinity, [](const Real& X) { return 1 / X; },
                                      QuadOptions{1e-20, 8000});
  CHECK(diff(slow.value, pi / 2) < 1e-19);
}

TEST_CASE("poly-exp primitive agrees with quadrature on 200 random cases") {
  ScopedPrecision guard(40);
  auto gen = fel::test::rng(20240611);
  std::uniform_int_distribution<int> deg(0, 6);
  std::uniform_real_distribution<double> coef(-3, 3), lam(0.3, 3.5), end(-6, 1);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    std::vector<Real> p(static_cast<std::size_t>(deg(gen)) + 1);
    for (auto& c : p) c = Real(coef(gen));
    Real lambda(lam(gen));
    Real lo(end(gen)), hi(end(gen));
    if (hi < lo) std::swap(lo, hi);
    std::span<const Real> ps(p);
    Real closed = poly_exp_integral(ps, lambda, lo, hi);
    auto q = integrate_finite([&](const Real& u) { return poly_eval(ps, u) * exp(lambda * u); }, lo, hi,
                              QuadOptions{1e-32, 4000});
    REQUIRE(q.ok());
    worst = std::max(worst, diff(closed, q.value));
  }
  CHECK(worst < 1e-28);
}

TEST_CASE("single-monomial antiderivative differentiates back") {
  ScopedPrecision guard(40);
  Real lambda("1.7"), u("-0.8"), h("1e-12");
  for (unsigned m = 0; m <= 8; ++m) {
    Real d = (poly_exp_antiderivative(m, lambda, u + h) - poly_exp_antiderivative(m, lambda, u - h)) / (2 * h);
    Real f = pow(u, m) * exp(lambda * u);
    CHECK(diff(d, f) < 1e-20);
  }
}

TEST_CASE("integral from minus infinity against semi-infinite quadrature") {
  ScopedPrecision guard(40);
  std::vector<Real> p{Real(0), Real(-2), Real(0), Real("0.5")};
  std::span<const Real> ps(p);
  Real lambda = Real("1.3");
  Real closed = poly_exp_integral_from_minus_infinity(ps, lambda, Real("-0.4"));
  auto q = integrate_semi_infinite(
      [&](const Real& u) { return poly_eval(ps, u) * exp(lambda * u); }, Real("-0.4"), Direction::kMinusInfinity,
      [&](const Real& X) {
        Real ax = abs(X);  // |p(u)| ≤ 2|u| + 0.5|u|³ and the primitive of |u|^k e^{λu} is bounded term by term
        return (2 * (ax / lambda + 1 / (lambda * lambda)) +
                Real("0.5") * (pow(ax, 3) / lambda + 3 * ax * ax / pow(lambda, 2) + 6 * ax / pow(lambda, 3) +
                               6 / pow(lambda, 4))) *
               exp(lambda * X);
      },
      QuadOptions{1e-30, 8000});
  CHECK(diff(closed, q.value) < 1e-28);
}

TEST_CASE("sign-change isolation") {
  ScopedPrecision guard(40);
  // (u + 1)(u − 0.5)(u − 2) = u³ − 1.5u² − 1.5u + 1
  std::vector<Real> c{Real(1), Real("-1.5"), Real("-1.5"), Real(1)};
  auto sc = isolate_sign_changes(std::span<const Real>(c), Real(-3), Real(3), 1e-30);
  REQUIRE(sc.roots.size() == 3);
  CHECK(diff(sc.roots[0], Real(-1)) < 1e-29);
  CHECK(diff(sc.roots[1], Real("0.5")) < 1e-29);
  CHECK(diff(sc.roots[2], Real(2)) < 1e-29);
  CHECK(sc.tangential.empty());

  // (u − 1)² touches zero without changing sign
  std::vector<Real> sq{Real(1), Real(-2), Real(1)};
  auto t = isolate_sign_changes(std::span<const Real>(sq), Real(-3), Real(3), 1e-30);
  CHECK(t.roots.empty());
  CHECK(t.tangential.size() == 1);

  std::vector<Real> pos{Real(1), Real(0), Real(1)};
  auto none = isolate_sign_changes(std::span<const Real>(pos), Real(-3), Real(3), 1e-30);
  CHECK(none.roots.empty());
  CHECK(none.tangential.empty());
}

TEST_CASE("sign changes of random polynomials sit between sign flips") {
  auto gen = fel::test::rng(7);
  std::uniform_real_distribution<double> coef(-2, 2);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> c(8);
    for (auto& x : c) x = coef(gen);
    std::span<const double> cs(c);
    auto sc = isolate_sign_changes(cs, -4.0, 0.0, 1e-12);
    for (const auto& r : sc.roots) {
      CHECK(poly_eval(cs, r - 1e-9) * poly_eval(cs, r + 1e-9) <= 0);
    }
    // no sign flip on a fine grid is missed
    int flips = 0;
    for (int i = 0; i < 40000; ++i) {
      double a = -4 + 4.0 * i / 40000, b = -4 + 4.0 * (i + 1) / 40000;
      if (poly_eval(cs, a) * poly_eval(cs, b) < 0) ++flips;
    }
    CHECK(static_cast<int>(sc.roots.size()) >= flips);
  }
}

TEST_CASE("bracketed maximization") {
  ScopedPrecision guard(40);
  auto m = maximize_scalar([](const Real& x) { return -(x - Real("0.3")) * (x - Real("0.3")); }, Real(0), Real(1),
                           1e-30);
  CHECK(m.status == Status::kOk);
  CHECK(diff(m.argmax, Real("0.3")) < 1e-14);
  CHECK(abs(m.max).convert_to<double>() < 1e-29);

  auto b = maximize_scalar([](const Real& x) { return x; }, Real(0), Real(1), 1e-20);
  CHECK(b.status == Status::kBoundaryMaximum);
  CHECK(diff(b.argmax, Real(1)) == 0);
}

TEST_CASE("quadrature is stable under precision doubling") {
  auto run = [](int digits) {
    ScopedPrecision guard(digits);
    Real pi = pi_v<Real>();
    return integrate_finite([&](const Real& t) { return sin(pi * t) * exp(t); }, Real(0), Real(3),
                            QuadOptions{std::pow(10.0, 8 - digits), 4000});
  };
  auto a = run(40);
  auto b = run(80);
  ScopedPrecision guard(80);
  CHECK(diff(a.value, b.value) <= std::max(a.err, 1e-32));
}
