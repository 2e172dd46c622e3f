#include "fel/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace fel {

namespace {

struct BudgetExhausted {};

/// Evaluation counter that remembers the best point.
class Counted {
 public:
  Counted(const Objective& f, long budget) : f_(f), budget_(budget) {}

  double operator()(const std::vector<double>& x) {
    if (evals_ >= budget_) throw BudgetExhausted{};
    ++evals_;
    double v = f_(x);
    if (!std::isfinite(v)) v = std::numeric_limits<double>::max();
    if (best_x_.empty() || v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    return v;
  }

  long evaluations() const { return evals_; }
  double best_f() const { return best_f_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  long budget_;
  long evals_ = 0;
  double best_f_ = std::numeric_limits<double>::max();
  std::vector<double> best_x_;
};

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Brent's principal-axis method (after the ALGOL/Fortran original).
class Praxis {
 public:
  Praxis(Counted& f, std::vector<double> x, const PraxisOptions& opt)
      : f_(f), n_(x.size()), x_(std::move(x)), rng_(opt.seed) {
    machep_ = std::numeric_limits<double>::epsilon();
    small_ = machep_ * machep_;
    vsmall_ = small_ * small_;
    large_ = 1 / small_;
    vlarge_ = 1 / vsmall_;
    m2_ = std::sqrt(machep_);
    m4_ = std::sqrt(m2_);
    t_ = small_ + std::abs(opt.tol);
    t2_ = t_;
    h_ = std::max(opt.max_step, 100 * t_);
    ldt_ = h_;
    v_ = Eigen::MatrixXd::Identity(n_, n_);
    d_.assign(n_, 0);
    q0_ = x_;
    q1_ = x_;
    z_.assign(n_, 0);
    dmin_ = small_;
  }

  void run() {
    fx_ = f_(x_);
    qf1_ = fx_;
    if (n_ == 1) {
      // a single direction: repeated line searches
      for (int it = 0; it < 200; ++it) {
        double before = fx_;
        double s = 0;
        minny(0, 4, d_[0], s, fx_, false);
        if (before - fx_ <= std::max(1e-15, std::abs(fx_) * machep_) && std::abs(s) < t2_) break;
      }
      return;
    }
    const int ktm = 1;
    bool illc = false;
    int kt = 0;
    while (true) {
      double sf = d_[0];
      d_[0] = 0;
      double s = 0;
      minny(0, 2, d_[0], s, fx_, false);
      if (s <= 0) v_.col(0) = -v_.col(0);
      if (sf <= 0.9 * d_[0] || 0.9 * sf >= d_[0]) std::fill(d_.begin() + 1, d_.end(), 0.0);

      for (std::size_t k = 1; k < n_; ++k) {
        std::vector<double> y = x_;
        sf = fx_;
        if (kt > 0) illc = true;
        std::size_t kl = k;
        double df = 0;
        while (true) {
          kl = k;
          df = 0;
          if (illc) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (std::size_t i = 0; i < n_; ++i) {
              s = (0.1 * ldt_ + t2_ * std::pow(10.0, kt)) * (u(rng_) - 0.5);
              z_[i] = s;
              for (std::size_t j = 0; j < n_; ++j) x_[j] += s * v_(j, i);
            }
            fx_ = f_(x_);
          }
          for (std::size_t k2 = k; k2 < n_; ++k2) {
            double sl = fx_;
            s = 0;
            minny(static_cast<int>(k2), 2, d_[k2], s, fx_, false);
            s = illc ? d_[k2] * (s + z_[k2]) * (s + z_[k2]) : sl - fx_;
            if (df < s) {
              df = s;
              kl = k2;
            }
          }
          if (!illc && df < std::abs(100 * machep_ * fx_)) {
            illc = true;
            continue;
          }
          break;
        }
        for (std::size_t k2 = 0; k2 < k; ++k2) {
          s = 0;
          minny(static_cast<int>(k2), 2, d_[k2], s, fx_, false);
        }
        double f1 = fx_;
        fx_ = sf;
        double lds = 0;
        for (std::size_t i = 0; i < n_; ++i) {
          double sl = x_[i];
          x_[i] = y[i];
          y[i] = sl - y[i];
          lds += y[i] * y[i];
        }
        lds = std::sqrt(lds);
        if (lds > small_) {
          for (std::size_t i = kl; i > k; --i) {
            v_.col(i) = v_.col(i - 1);
            d_[i] = d_[i - 1];
          }
          d_[k] = 0;
          for (std::size_t i = 0; i < n_; ++i) v_(i, k) = y[i] / lds;
          minny(static_cast<int>(k), 4, d_[k], lds, f1, true);
          if (lds <= 0) {
            lds = -lds;
            v_.col(k) = -v_.col(k);
          }
        }
        ldt_ *= illc ? 0.1 : 0.01;
        if (ldt_ < lds) ldt_ = lds;
        t2_ = m2_ * norm2(x_) + t_;
        kt = ldt_ > 0.5 * t2_ ? 0 : kt + 1;
        if (kt > ktm) return;
      }

      quad();

      double dn = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        d_[i] = 1 / std::sqrt(std::max(d_[i], vsmall_));
        dn = std::max(dn, d_[i]);
      }
      for (std::size_t j = 0; j < n_; ++j) v_.col(j) *= d_[j] / dn;

      Eigen::JacobiSVD<Eigen::MatrixXd> svd(v_, Eigen::ComputeFullU);
      Eigen::VectorXd sv = svd.singularValues();
      Eigen::MatrixXd u = svd.matrixU();
      std::vector<std::size_t> order(n_);
      std::iota(order.begin(), order.end(), 0);
      std::vector<double> dnew(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        double zi = dn * sv(static_cast<Eigen::Index>(i));
        dnew[i] = zi > large_ ? vsmall_ : (zi < small_ ? vlarge_ : 1 / (zi * zi));
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dnew[a] > dnew[b]; });
      for (std::size_t i = 0; i < n_; ++i) {
        d_[i] = dnew[order[i]];
        v_.col(i) = u.col(order[i]);
      }
      dmin_ = std::max(d_[n_ - 1], small_);
      illc = m2_ * d_[0] > dmin_;
    }
  }

 private:
  double flin(int j, double l) {
    std::vector<double> t(n_);
    if (j >= 0) {
      for (std::size_t i = 0; i < n_; ++i) t[i] = x_[i] + l * v_(i, j);
    } else {
      double qa = l * (l - qd1_) / (qd0_ * (qd0_ + qd1_));
      double qb = (l + qd0_) * (qd1_ - l) / (qd0_ * qd1_);
      double qc = l * (l + qd0_) / (qd1_ * (qd0_ + qd1_));
      for (std::size_t i = 0; i < n_; ++i) t[i] = qa * q0_[i] + qb * x_[i] + qc * q1_[i];
    }
    return f_(t);
  }

  // Line (j ≥ 0) or curve (j < 0) minimization; x1 and d2 are updated in place.
  void minny(int j, int nits, double& d2, double& x1, double& f1, bool fk) {
    double sf1 = f1;
    double sx1 = x1;
    int k = 0;
    double xm = 0;
    double fm = fx_;
    double f0 = fx_;
    bool dz = d2 < machep_;
    double s = norm2(x_);
    double temp = dz ? dmin_ : d2;
    double t2 = m4_ * std::sqrt(std::abs(fx_) / temp + s * ldt_) + m2_ * ldt_;
    s = m4_ * s + t_;
    if (dz && t2 > s) t2 = s;
    t2 = std::max(t2, small_);
    t2 = std::min(t2, 0.01 * h_);
    if (fk && f1 <= fm) {
      xm = x1;
      fm = f1;
    }
    if (!fk || std::abs(x1) < t2) {
      x1 = x1 >= 0 ? t2 : -t2;
      f1 = flin(j, x1);
    }
    if (f1 <= fm) {
      xm = x1;
      fm = f1;
    }
    double x2 = 0;
    double f2 = 0;
    double d1 = 0;
    while (true) {
      if (dz) {
        x2 = f0 < f1 ? -x1 : 2 * x1;
        f2 = flin(j, x2);
        if (f2 <= fm) {
          xm = x2;
          fm = f2;
        }
        d2 = (x2 * (f1 - f0) - x1 * (f2 - f0)) / (x1 * x2 * (x1 - x2));
      }
      d1 = (f1 - f0) / x1 - x1 * d2;
      dz = true;
      if (d2 <= small_) x2 = d1 < 0 ? h_ : -h_;
      else x2 = -0.5 * d1 / d2;
      if (std::abs(x2) > h_) x2 = x2 > 0 ? h_ : -h_;
      bool restart = false;
      while (true) {
        f2 = flin(j, x2);
        if (k < nits && f2 > f0) {
          ++k;
          if (f0 < f1 && x1 * x2 > 0) {
            restart = true;
            break;
          }
          x2 *= 0.5;
          continue;
        }
        break;
      }
      if (!restart) break;
    }
    ++nl_;
    if (f2 > fm) x2 = xm;
    else fm = f2;
    if (std::abs(x2 * (x2 - x1)) > small_) d2 = (x2 * (f1 - f0) - x1 * (fm - f0)) / (x1 * x2 * (x1 - x2));
    else if (k > 0) d2 = 0;
    if (d2 <= small_) d2 = small_;
    x1 = x2;
    fx_ = fm;
    if (sf1 < fx_) {
      fx_ = sf1;
      x1 = sx1;
    }
    if (j >= 0) {
      for (std::size_t i = 0; i < n_; ++i) x_[i] += x1 * v_(i, j);
    }
  }

  // Quadratic extrapolation through q0, q1 and the current point.
  void quad() {
    double s = fx_;
    fx_ = qf1_;
    qf1_ = s;
    qd1_ = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      s = x_[i];
      double l = q1_[i];
      x_[i] = l;
      q1_[i] = s;
      qd1_ += (s - l) * (s - l);
    }
    qd1_ = std::sqrt(qd1_);
    double l = qd1_;
    s = 0;
    double qa, qb, qc;
    if (qd0_ > 0 && qd1_ > 0 && nl_ >= 3 * static_cast<long>(n_ * n_)) {
      double value = qf1_;
      minny(-1, 2, s, l, value, true);
      qa = l * (l - qd1_) / (qd0_ * (qd0_ + qd1_));
      qb = (l + qd0_) * (qd1_ - l) / (qd0_ * qd1_);
      qc = l * (l + qd0_) / (qd1_ * (qd0_ + qd1_));
    } else {
      fx_ = qf1_;
      qa = qb = 0;
      qc = 1;
    }
    qd0_ = qd1_;
    for (std::size_t i = 0; i < n_; ++i) {
      s = q0_[i];
      q0_[i] = x_[i];
      x_[i] = qa * s + qb * x_[i] + qc * q1_[i];
    }
  }

  Counted& f_;
  std::size_t n_;
  std::vector<double> x_;
  std::mt19937_64 rng_;
  double machep_, small_, vsmall_, large_, vlarge_, m2_, m4_;
  double t_, t2_, h_, ldt_;
  double dmin_ = 0;
  double fx_ = 0;
  double qf1_ = 0;
  double qd0_ = 0;
  double qd1_ = 0;
  long nl_ = 0;
  Eigen::MatrixXd v_;
  std::vector<double> d_, q0_, q1_, z_;
};

}  // namespace

MinimizeResult praxis_minimize(const Objective& f, std::vector<double> x0, const PraxisOptions& opt) {
  if (x0.empty()) throw DomainError("praxis: empty starting point");
  if (opt.budget < 1) throw DomainError("praxis: budget must be positive");
  Counted counted(f, opt.budget);
  MinimizeResult r;
  try {
    Praxis p(counted, std::move(x0), opt);
    p.run();
  } catch (const BudgetExhausted&) {
    r.status = Status::kBudget;
  }
  r.x = counted.best_x();
  r.f = counted.best_f();
  r.evaluations = counted.evaluations();
  return r;
}

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  if (x0.empty()) throw DomainError("nelder_mead: empty starting point");
  if (opt.budget < 1) throw DomainError("nelder_mead: budget must be positive");
  const std::size_t n = x0.size();
  Counted counted(f, opt.budget);
  MinimizeResult r;
  try {
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opt.step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = counted(simplex[i]);
    std::vector<std::size_t> idx(n + 1);
    while (true) {
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t best = idx.front(), worst = idx.back(), second = idx[n - 1];
      double diam = 0;
      for (std::size_t i = 0; i <= n; ++i) {
        double d = 0;
        for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(simplex[i][j] - simplex[best][j]));
        diam = std::max(diam, d);
      }
      if (fv[worst] - fv[best] <= opt.ftol && diam <= opt.xtol) break;
      if (diam <= opt.xtol * 1e-3) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
      }
      auto along = [&](double coef) {
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (simplex[worst][j] - centroid[j]);
        return p;
      };
      auto xr = along(-1.0);
      double fr = counted(xr);
      if (fr < fv[best]) {
        auto xe = along(-2.0);
        double fe = counted(xe);
        if (fe < fr) simplex[worst] = xe, fv[worst] = fe;
        else simplex[worst] = xr, fv[worst] = fr;
      } else if (fr < fv[second]) {
        simplex[worst] = xr, fv[worst] = fr;
      } else {
        bool outside = fr < fv[worst];
        auto xc = along(outside ? -0.5 : 0.5);
        double fc = counted(xc);
        if (fc < (outside ? fr : fv[worst])) {
          simplex[worst] = xc, fv[worst] = fc;
        } else {
          for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            fv[i] = counted(simplex[i]);
          }
        }
      }
    }
  } catch (const BudgetExhausted&) {
    r.status = Status::kBudget;
  }
  r.x = counted.best_x();
  r.f = counted.best_f();
  r.evaluations = counted.evaluations();
  return r;
}

}  // namespace fel
