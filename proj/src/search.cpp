#include "fel/search.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

namespace fel {

void SearchConfig::validate() const {
  if (restarts < 1) throw DomainError("search: restarts must be at least 1");
  if (budget < 1) throw DomainError("search: budget must be at least 1");
  if (fast_mode_digits < 15) throw DomainError("search: fast_mode_digits must be at least 15");
  if (n_max < 0) throw DomainError("search: n_max must be non-negative");
  if (!(local_tol > 0)) throw DomainError("search: local_tol must be positive");
  if (threads < 0) throw DomainError("search: threads must be non-negative");
}

namespace {

constexpr double kPenalty = 1e3;
constexpr int kDoubleDigits = 17;

std::mt19937_64 restart_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Runs task(0..n-1) on a small pool. Results are written by index, so the
// caller's reduction sees the same order whatever the scheduling.
template <class Task>
void parallel_for(int n, int threads, Task task) {
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class T>
double lower_value(const Rational& A, const std::vector<double>& x, bool nonpositive_c, double tol) {
  const std::size_t N = x.size() - 2;
  double log_a = x[N];
  double c = nonpositive_c ? -std::abs(x[N + 1]) : x[N + 1];
  if (!std::isfinite(log_a) || std::abs(log_a) > 12 || !std::isfinite(c) || std::abs(c) > 40) return kPenalty;
  std::vector<T> b;
  for (std::size_t i = 0; i < N; ++i) b.push_back(T(x[i]));
  using std::exp;
  LowerFamily<T> fam(exp(T(log_a)), T(c), std::move(b));
  auto pen = A.infinite() ? Penalty<T>::infinity() : Penalty<T>::finite(A.as<T>());
  auto j = j_functional(fam, pen, QuadOptions{tol, 2000});
  if (j.status == Status::kDegenerate || j.status == Status::kNotInClass) return kPenalty;
  double v = to_double(j.value);
  return std::isfinite(v) ? -v : kPenalty;
}

template <class T>
double upper_value(const Rational& A, const std::vector<double>& gaps) {
  std::vector<T> t;
  T acc = 0;
  for (double g : gaps) {
    if (!std::isfinite(g) || std::abs(g) > 5) return kPenalty;
    acc += T(std::abs(g));
    t.push_back(acc);
  }
  UpperFamily<T> fam(A.as<T>(), std::move(t));
  return to_double(fast_sup(fam));
}

std::vector<Decimal> cumulative_decimals(const std::vector<double>& gaps) {
  std::vector<Decimal> out;
  double acc = 0;
  for (double g : gaps) {
    acc += std::abs(g);
    out.push_back(Decimal::from_double(acc));
  }
  return out;
}

}  // namespace

double lower_objective(const Rational& A, const std::vector<double>& x, bool nonpositive_c, int digits) {
  if (x.size() < 3) throw DomainError("lower objective: need at least one coefficient");
  if (digits <= kDoubleDigits) return lower_value<double>(A, x, nonpositive_c, 1e-12);
  ScopedPrecision guard(digits);
  return lower_value<Real>(A, x, nonpositive_c, std::pow(10.0, 5 - digits));
}

double upper_objective(const Rational& A, const std::vector<double>& gaps, int digits) {
  if (digits <= kDoubleDigits) return upper_value<double>(A, gaps);
  ScopedPrecision guard(digits);
  return upper_value<Real>(A, gaps);
}

LowerSearchResult search_lower(const Rational& A, int N, const SearchConfig& cfg, const PrecisionContext& ctx,
                               const std::optional<LowerParams>& start, const TranscriptSink& sink) {
  cfg.validate();
  ctx.validate();
  if (N < 1) throw DomainError("search_lower: N must be at least 1");
  if (start) start->validate();
  const bool nonpositive_c = A.infinite();
  const std::size_t dim = static_cast<std::size_t>(N) + 2;
  Objective obj = [&](const std::vector<double>& x) {
    return lower_objective(A, x, nonpositive_c, cfg.fast_mode_digits);
  };

  LowerSearchResult res;
  const long per_restart = std::max<long>(1, cfg.budget / cfg.restarts);
  std::vector<MinimizeResult> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(cfg.restarts, cfg.threads, [&](int r) {
    auto rng = restart_rng(cfg.seed, static_cast<std::uint64_t>(r));
    std::vector<double> x0(dim, 0.0);
    if (r == 0 && start) {
      for (std::size_t i = 0; i < dim - 2; ++i) x0[i] = i < start->b.size() ? start->b[i].to_double() : 0.0;
      x0[dim - 2] = std::log(start->a.to_double());
      x0[dim - 1] = start->c.to_double();
    } else {
      // b ~ Normal(0, 1), a log-uniform on [0.1, 1.5], c ~ U(0, 1)
      std::normal_distribution<double> coef(0.0, 1.0);
      std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(1.5));
      std::uniform_real_distribution<double> shift(0.0, 1.0);
      for (std::size_t i = 0; i < dim - 2; ++i) x0[i] = coef(rng);
      x0[dim - 2] = log_scale(rng);
      x0[dim - 1] = nonpositive_c ? 0.0 : shift(rng);
    }
    PraxisOptions po;
    po.tol = cfg.local_tol;
    po.max_step = 1.0;
    po.budget = per_restart;
    po.seed = cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1));
    runs[static_cast<std::size_t>(r)] = praxis_minimize(obj, x0, po);
  });

  std::vector<double> best_x;
  double best_f = std::numeric_limits<double>::max();
  long used = 0;
  bool exhausted = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& m = runs[static_cast<std::size_t>(r)];
    used += m.evaluations;
    exhausted = exhausted || m.status == Status::kBudget;
    if (m.f < best_f) {
      best_f = m.f;
      best_x = m.x;
      if (sink) {
        sink({{"problem", "lower"}, {"A", A.str()}, {"restart", r}, {"evaluations", used}, {"value", -m.f}});
      }
    }
  }
  res.evaluations = used;
  if (best_x.empty() || best_f >= kPenalty) {
    res.status = Status::kNoCandidate;
    res.bound.status = Status::kNoCandidate;
    return res;
  }

  // normalize so that ‖F‖₁ = 1, then certify from exact decimals
  std::vector<double> b(best_x.begin(), best_x.begin() + N);
  double log_a = best_x[dim - 2];
  double c = nonpositive_c ? -std::abs(best_x[dim - 1]) : best_x[dim - 1];
  LowerFamily<double> fam(std::exp(log_a), c, b);
  double l1 = l1_norm(fam, QuadOptions{1e-13, 2000}).value;
  LowerParams p;
  p.a = Decimal::from_double(std::exp(log_a));
  p.c = Decimal::from_double(c);
  for (double v : b) p.b.push_back(Decimal::from_double(l1 > 0 ? v / l1 : v));
  res.params = p;
  res.bound = lower_bound(p, A, ctx);
  res.bound.meta["search"] = {{"seed", cfg.seed}, {"restarts", cfg.restarts}, {"N", N},
                              {"evaluations", used}, {"fast_mode_digits", cfg.fast_mode_digits},
                              {"fast_value", -best_f}};
  res.status = exhausted && res.bound.status == Status::kOk ? Status::kBudget : res.bound.status;
  return res;
}

UpperSearchResult search_upper(const Rational& A, const SearchConfig& cfg, const PrecisionContext& ctx,
                               const std::optional<UpperParams>& start, const TranscriptSink& sink) {
  cfg.validate();
  ctx.validate();
  if (A.infinite()) throw DomainError("search_upper: A must be finite");

  std::vector<double> inc;  // incumbent gaps
  if (start) {
    start->validate();
    double prev = 0;
    for (const auto& t : start->T) {
      double v = t.to_double();
      inc.push_back(v - prev);
      prev = v;
    }
  }
  long used = 0;
  auto obj = [&](const std::vector<double>& g) { return upper_objective(A, g, cfg.fast_mode_digits); };
  double inc_value = obj(inc);
  ++used;
  if (sink) sink({{"problem", "upper"}, {"A", A.str()}, {"N", inc.size()}, {"evaluations", used}, {"value", inc_value}});

  // gaps ~ |Normal(0, 0.1)| cold, incumbent + Normal(0, 0.02) warm
  const long per_local = std::max<long>(200, cfg.budget / (4L * cfg.restarts));
  int stall = 0;
  Status status = Status::kOk;
  std::size_t n_first = start ? std::max<std::size_t>(inc.size(), 1) : 1;

  for (std::size_t N = n_first; N <= static_cast<std::size_t>(cfg.n_max) && N > 0; ++N) {
    const long share = (cfg.budget - used) / cfg.restarts - 1;  // one evaluation for the start point
    if (share < 2) {
      status = Status::kBudget;
      break;
    }
    const long local = std::min(per_local, share);
    std::vector<MinimizeResult> runs(static_cast<std::size_t>(cfg.restarts));
    parallel_for(cfg.restarts, cfg.threads, [&](int r) {
      auto rng = restart_rng(cfg.seed, (static_cast<std::uint64_t>(N) << 20) + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> cold(0.0, 0.1);
      std::normal_distribution<double> warm(0.0, 0.02);
      std::vector<double> x0;
      bool warm_start = !inc.empty() && inc.size() <= N && r + 1 < cfg.restarts;
      if (warm_start) {
        x0 = inc;
        if (r > 0) {
          for (auto& g : x0) g = std::abs(g + warm(rng));
        }
        while (x0.size() < N) x0.push_back(std::abs(r == 0 ? warm(rng) : cold(rng)));
      } else {
        for (std::size_t i = 0; i < N; ++i) x0.push_back(std::abs(cold(rng)));
      }
      MinimizeResult m{x0, obj(x0), 1, Status::kOk};
      for (double step : {0.01, 0.002}) {
        NelderMeadOptions no;
        no.step = step;
        no.ftol = cfg.local_tol;
        no.xtol = cfg.local_tol;
        no.budget = std::max<long>(1, local / 2);
        auto mm = nelder_mead(obj, m.x, no);
        mm.evaluations += m.evaluations;
        if (mm.f >= m.f) {
          mm.x = m.x;
          mm.f = m.f;
        }
        m = mm;
      }
      runs[static_cast<std::size_t>(r)] = std::move(m);
    });
    double best_n = std::numeric_limits<double>::max();
    std::vector<double> best_g;
    for (const auto& m : runs) {
      used += m.evaluations;
      if (m.f < best_n) {
        best_n = m.f;
        best_g = m.x;
      }
    }
    if (best_g.empty()) {
      status = Status::kBudget;
      break;
    }
    double improvement = inc_value - best_n;
    if (best_n < inc_value) {
      inc = best_g;
      for (auto& g : inc) g = std::abs(g);
      inc_value = best_n;
      if (sink) {
        sink({{"problem", "upper"}, {"A", A.str()}, {"N", N}, {"evaluations", used}, {"value", inc_value},
              {"T", [&] {
                 nlohmann::json t = nlohmann::json::array();
                 for (const auto& d : cumulative_decimals(inc)) t.push_back(d.str());
                 return t;
               }()}});
      }
    }
    stall = improvement < 1e-5 ? stall + 1 : 0;
    if (stall >= 2) break;
    if (used >= cfg.budget) {
      status = Status::kBudget;
      break;
    }
  }

  UpperSearchResult res;
  res.params = canonicalize(UpperParams{A, cumulative_decimals(inc)});
  res.bound = sup_norm(res.params, ctx);
  res.bound.meta["search"] = {{"seed", cfg.seed}, {"restarts", cfg.restarts}, {"n_max", cfg.n_max},
                              {"evaluations", used}, {"fast_mode_digits", cfg.fast_mode_digits},
                              {"fast_value", inc_value}, {"N", res.params.T.size()}};
  res.evaluations = used;
  res.status = status == Status::kOk ? res.bound.status : status;
  return res;
}

}  // namespace fel
