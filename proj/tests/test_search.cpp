#include "fel/io.hpp"
#include "fel/search.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fel;
using fel::test::diff;

namespace {

double rosenbrock(const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 100 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1 - x[i], 2);
  return s;
}

double bowl(const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1) * std::pow(x[i] - 0.5 * i, 2);
  return s;
}

}  // namespace

TEST_CASE("principal-axis method on standard problems") {
  PraxisOptions po;
  po.tol = 1e-10;
  auto r = praxis_minimize(rosenbrock, {-1.2, 1.0}, po);
  CHECK(r.status == Status::kOk);
  CHECK(r.f < 1e-6);
  CHECK(std::abs(r.x[0] - 1) < 1e-3);
  auto b = praxis_minimize(bowl, std::vector<double>(5, 3.0), po);
  CHECK(b.f < 1e-12);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(b.x[i] - 0.5 * i) < 1e-5);
  auto again = praxis_minimize(rosenbrock, {-1.2, 1.0}, po);
  CHECK(again.x == r.x);
  CHECK(again.evaluations == r.evaluations);
  po.budget = 50;
  auto cut = praxis_minimize(rosenbrock, {-1.2, 1.0}, po);
  CHECK(cut.status == Status::kBudget);
  CHECK(cut.evaluations <= 50);
  CHECK(cut.f <= rosenbrock({-1.2, 1.0}));
  po.budget = 0;
  CHECK_THROWS_AS(praxis_minimize(rosenbrock, {0, 0}, po), DomainError);
}

TEST_CASE("Nelder-Mead on standard problems") {
  NelderMeadOptions no;
  no.step = 0.5;
  no.budget = 20000;
  auto r = nelder_mead(rosenbrock, {-1.2, 1.0}, no);
  CHECK(r.f < 1e-8);
  auto b = nelder_mead(bowl, std::vector<double>(4, 2.0), no);
  CHECK(b.f < 1e-10);
  no.budget = 30;
  auto cut = nelder_mead(rosenbrock, {-1.2, 1.0}, no);
  CHECK(cut.status == Status::kBudget);
  CHECK(cut.evaluations <= 30);
  no.budget = 0;
  CHECK_THROWS_AS(nelder_mead(rosenbrock, {0, 0}, no), DomainError);
}

TEST_CASE("search configuration is validated") {
  auto ctx = PrecisionContext::with_digits(30);
  for (auto mutate : std::vector<void (*)(SearchConfig&)>{
           [](SearchConfig& c) { c.restarts = 0; }, [](SearchConfig& c) { c.budget = 0; },
           [](SearchConfig& c) { c.fast_mode_digits = 10; }, [](SearchConfig& c) { c.n_max = -1; },
           [](SearchConfig& c) { c.threads = -2; }}) {
    SearchConfig cfg;
    mutate(cfg);
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    CHECK_THROWS_AS(search_upper(Rational("1"), cfg, ctx), DomainError);
  }
  SearchConfig ok;
  CHECK_THROWS_AS(search_lower(Rational("1"), 0, ok, ctx), DomainError);
  CHECK_THROWS_AS(search_upper(Rational("inf"), ok, ctx), DomainError);
}

TEST_CASE("fast objectives agree with certified evaluation") {
  auto table = load_lower_table(fel::test::data_file("table2_lower.json"));
  const auto& e = table[3];
  std::vector<double> x;
  for (const auto& b : e.params.b) x.push_back(b.to_double());
  x.push_back(std::log(e.params.a.to_double()));
  x.push_back(e.params.c.to_double());
  double fast = -lower_objective(Rational("1"), x, false, 15);
  CHECK(std::abs(fast - 1.146006683318576) < 1e-8);
  double mid = -lower_objective(Rational("1"), x, false, 25);
  CHECK(std::abs(mid - 1.146006683318576) < 1e-12);

  auto up = load_upper_table(fel::test::data_file("table1_upper.json"));
  std::vector<double> gaps;
  double prev = 0;
  for (const auto& t : up[3].params.T) {
    gaps.push_back(t.to_double() - prev);
    prev = t.to_double();
  }
  CHECK(std::abs(upper_objective(Rational("1"), gaps, 15) - 1.147307735672914) < 1e-9);
  CHECK(upper_objective(Rational("1"), {}, 15) == doctest::Approx(2.0));
}

TEST_CASE("lower search recovers the exact endpoint") {
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.budget = 8000;
  auto r = search_lower(Rational("inf"), 1, cfg, PrecisionContext::with_digits(40));
  REQUIRE(r.bound.certified);
  ScopedPrecision guard(40);
  CHECK(diff(r.bound.value, Real(1)) < 1e-6);
  CHECK(r.bound.value <= 1 + 1e-25);
  CHECK(r.params.c.to_real() <= 0);
}

TEST_CASE("cold lower search at A = 3 beats the floor") {
  SearchConfig cfg;
  cfg.seed = 1;
  cfg.restarts = 50;
  cfg.budget = 250000;
  std::vector<nlohmann::json> log;
  auto r = search_lower(Rational("3"), 12, cfg, PrecisionContext::with_digits(40),
                        std::nullopt, [&](const nlohmann::json& j) { log.push_back(j); });
  REQUIRE(r.bound.certified);
  CHECK(r.bound.certified_lower() >= Real("1.05"));
  CHECK(r.evaluations <= cfg.budget);
  // incumbents only improve
  for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i]["value"].get<double>() > log[i - 1]["value"].get<double>());
  // the emitted parameters reproduce the certified value at higher precision
  auto again = lower_bound(r.params, Rational("3"), PrecisionContext::with_digits(60));
  ScopedPrecision guard(60);
  CHECK(diff(again.value, r.bound.value) <= r.bound.err);
}

TEST_CASE("lower search seeded at the shipped A = 1 column") {
  auto table = load_lower_table(fel::test::data_file("table2_lower.json"));
  SearchConfig cfg;
  cfg.restarts = 1;
  cfg.budget = 20000;
  auto r = search_lower(Rational("1"), static_cast<int>(table[3].params.b.size()), cfg,
                        PrecisionContext::with_digits(40), table[3].params);
  REQUIRE(r.bound.certified);
  CHECK(r.bound.certified_lower() >= Real("1.146006"));
  // duality: no test function beats the certified upper bound at the same A
  CHECK(r.bound.certified_lower() < Real("1.1473077"));
}

TEST_CASE("upper search at A = 0 keeps psi = 0") {
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.budget = 4000;
  cfg.n_max = 3;
  auto r = search_upper(Rational("0"), cfg, PrecisionContext::with_digits(40));
  REQUIRE(r.bound.certified);
  CHECK(r.bound.certified_upper() >= 2);
  CHECK(r.bound.certified_upper() < Real("2.0000001"));
}

TEST_CASE("upper search is deterministic and its transcript is monotone") {
  SearchConfig cfg;
  cfg.seed = 3;
  cfg.restarts = 4;
  cfg.budget = 6000;
  cfg.n_max = 4;
  std::vector<nlohmann::json> a_log, b_log;
  auto a = search_upper(Rational("1/2"), cfg, PrecisionContext::with_digits(30), std::nullopt,
                        [&](const nlohmann::json& j) { a_log.push_back(j); });
  cfg.threads = 1;
  auto b = search_upper(Rational("1/2"), cfg, PrecisionContext::with_digits(30), std::nullopt,
                        [&](const nlohmann::json& j) { b_log.push_back(j); });
  CHECK(a.params.T == b.params.T);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a_log == b_log);
  REQUIRE(a_log.size() >= 2);
  for (std::size_t i = 1; i < a_log.size(); ++i)
    CHECK(a_log[i]["value"].get<double>() < a_log[i - 1]["value"].get<double>());
  CHECK(a.evaluations <= cfg.budget + cfg.restarts);
  CHECK(a.bound.certified);
  CHECK(a.bound.certified_upper() < 2);
}

TEST_CASE("upper search at A = 1 from a fixed seed") {
  SearchConfig cfg;
  cfg.seed = 7;
  auto r = search_upper(Rational("1"), cfg, PrecisionContext::with_digits(40));
  REQUIRE(r.bound.certified);
  CHECK(r.bound.certified_upper() <= Real("1.1480"));
  CHECK(r.evaluations <= 100000);
}

TEST_CASE("a tiny budget is reported") {
  SearchConfig cfg;
  cfg.restarts = 2;
  cfg.budget = 3;
  auto r = search_upper(Rational("1"), cfg, PrecisionContext::with_digits(30));
  CHECK(r.status == Status::kBudget);
  CHECK(r.params.T.empty());
}
