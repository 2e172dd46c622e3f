#include "fel/nt.hpp"

#include "fel/poly_exp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fel::nt {

namespace {

constexpr int kRatioDigits = 30;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

int jacobi(i64 n, i64 m) {
  if (m <= 0 || m % 2 == 0) throw DomainError("jacobi: modulus must be odd and positive");
  u64 a = static_cast<u64>(((n % m) + m) % m);
  u64 b = static_cast<u64>(m);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      u64 r = b % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) t = -t;
    a %= b;
  }
  return b == 1 ? t : 0;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> comp(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& f) {
  if (hi < 2 || lo > hi) return;
  if (lo <= 2) {
    f(2);
    lo = 3;
  }
  if (lo % 2 == 0) ++lo;
  if (lo > hi) return;
  const auto base = primes_up_to(isqrt(hi));
  constexpr u64 kSegment = u64(1) << 18;  // odd numbers per segment
  std::vector<char> mark(kSegment);
  for (u64 start = lo; start <= hi; start += 2 * kSegment) {
    // segment holds start, start+2, ..., covering at most kSegment odds
    u64 span = std::min<u64>(kSegment, (hi - start) / 2 + 1);
    std::fill(mark.begin(), mark.begin() + span, 0);
    u64 end = start + 2 * (span - 1);
    for (std::size_t i = 1; i < base.size(); ++i) {
      u64 p = base[i];
      if (p * p > end) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      if (first % 2 == 0) first += p;
      for (u64 j = first; j <= end; j += 2 * p) mark[(j - start) / 2] = 1;
    }
    for (u64 i = 0; i < span; ++i) {
      u64 n = start + 2 * i;
      if (!mark[i] && n > 1) f(n);
    }
  }
}

u64 least_qnr(u64 p) {
  if (p < 3 || !is_prime(p)) throw DomainError("least_qnr: p must be an odd prime");
  // the least non-residue is prime, so successive primes suffice
  for (u64 q = 2;; q = q == 2 ? 3 : q + 2) {
    if (!is_prime(q)) continue;
    if (jacobi(static_cast<i64>(q), static_cast<i64>(p)) == -1) return q;
  }
}

u64 least_prime_qr(u64 p) {
  if (p < 3 || !is_prime(p)) throw DomainError("least_prime_qr: p must be an odd prime");
  for (u64 q = 2;; q = q == 2 ? 3 : q + 2) {
    if (!is_prime(q)) continue;
    if (jacobi(static_cast<i64>(q), static_cast<i64>(p)) == 1) return q;
  }
}

std::optional<u64> least_prime_in_ap(i64 a, u64 q, u64 limit) {
  if (q == 0) throw DomainError("least_prime_in_ap: modulus must be positive");
  u64 r = static_cast<u64>(((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q));
  if (std::gcd(r, q) != 1) throw DomainError("least_prime_in_ap: gcd(a, q) must be 1");
  if (r == 0) r = q;  // q = 1
  for (u64 n = r; n <= limit; n += q) {
    if (is_prime(n)) return n;
    if (limit - n < q) break;
  }
  return std::nullopt;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

ScanKind parse_scan_kind(const std::string& s) {
  if (s == "qnr") return ScanKind::kQnr;
  if (s == "prime-qr") return ScanKind::kPrimeQr;
  if (s == "ap") return ScanKind::kAp;
  throw DomainError("unknown scan kind '" + s + "'");
}

const char* to_string(ScanKind k) {
  switch (k) {
    case ScanKind::kQnr: return "qnr";
    case ScanKind::kPrimeQr: return "prime-qr";
    case ScanKind::kAp: return "ap";
  }
  return "?";
}

namespace {

bool before(const NtRecord& a, const NtRecord& b) {
  return a.key != b.key ? a.key < b.key : a.residue < b.residue;
}

void absorb(ScanSummary& s, const NtRecord& r) {
  ++s.count;
  if (s.count == 1 || r.ratio > s.max_ratio || (r.ratio == s.max_ratio && before(r, s.argmax))) {
    s.max_ratio = r.ratio;
    s.argmax = r;
  }
  if (r.ratio >= s.comparator) {
    ++s.exceedance_count;
    if (s.exceedances.size() < ScanSummary::kMaxExceedances) s.exceedances.push_back(r);
  }
}

void finish(ScanSummary& s) { s.margin = s.comparator - s.max_ratio; }

}  // namespace

ScanSummary merge(const ScanSummary& left, const ScanSummary& right) {
  if (left.count == 0) return right;
  if (right.count == 0) return left;
  ScanSummary out = left;
  out.lo = std::min(left.lo, right.lo);
  out.hi = std::max(left.hi, right.hi);
  out.count = left.count + right.count;
  if (right.max_ratio > left.max_ratio ||
      (right.max_ratio == left.max_ratio && before(right.argmax, left.argmax))) {
    out.max_ratio = right.max_ratio;
    out.argmax = right.argmax;
  }
  std::vector<NtRecord> ex = left.exceedances;
  ex.insert(ex.end(), right.exceedances.begin(), right.exceedances.end());
  std::sort(ex.begin(), ex.end(), before);
  if (ex.size() > ScanSummary::kMaxExceedances) ex.resize(ScanSummary::kMaxExceedances);
  out.exceedances = std::move(ex);
  out.exceedance_count = left.exceedance_count + right.exceedance_count;
  finish(out);
  return out;
}

namespace {

ScanSummary scan_chunk(ScanKind kind, u64 lo, u64 hi, const Real& comparator,
                       const std::function<void(const NtRecord&)>& sink) {
  ScanSummary s;
  s.kind = kind;
  s.lo = lo;
  s.hi = hi;
  s.comparator = comparator;
  auto emit = [&](NtRecord&& r) {
    absorb(s, r);
    if (sink) sink(r);
  };
  if (kind == ScanKind::kAp) {
    for (u64 q = std::max<u64>(lo, 2); q <= hi; ++q) {
      Real lq = log(Real(q)) * Real(euler_phi(q));
      Real norm = lq * lq;
      for (u64 a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        auto p = least_prime_in_ap(static_cast<i64>(a), q, ~u64(0) - q);
        emit({q, a, *p, Real(*p) / norm});
      }
    }
  } else {
    for_each_prime(std::max<u64>(lo, 3), hi, [&](u64 p) {
      u64 v = kind == ScanKind::kQnr ? least_qnr(p) : least_prime_qr(p);
      Real lp = log(Real(p));
      emit({p, 0, v, Real(v) / (lp * lp)});
    });
  }
  finish(s);
  return s;
}

}  // namespace

ScanSummary scan(ScanKind kind, u64 lo, u64 hi, const Real& comparator, u64 chunk,
                 const std::function<void(const NtRecord&)>& sink) {
  ScopedPrecision guard(kRatioDigits);
  if (lo > hi) throw DomainError("scan: empty range");
  if (chunk == 0) throw DomainError("scan: chunk size must be positive");
  Real comp = comparator;
  ScanSummary total;
  total.kind = kind;
  total.lo = lo;
  total.hi = hi;
  total.comparator = comp;
  for (u64 a = lo; a <= hi;) {
    u64 b = hi - a < chunk - 1 ? hi : a + chunk - 1;
    total = merge(total, scan_chunk(kind, a, b, comp, sink));
    if (b == hi) break;
    a = b + 1;
  }
  total.lo = lo;
  total.hi = hi;
  finish(total);
  return total;
}

// ---- prime sums -------------------------------------------------------------

double Bump::operator()(double t) const {
  if (!(t > lo && t < hi)) return 0;
  double s = (2 * t - lo - hi) / (hi - lo);
  double w = 1 - s * s;
  return amplitude * w * w;
}

double Bump::l1() const { return std::abs(amplitude) * (hi - lo) / 2 * 16.0 / 15.0; }

double Bump::derivative_l1() const { return 2 * std::abs(amplitude); }

Bump default_bump(int item, u64 m) {
  double L = std::log(static_cast<double>(m)) / (2 * M_PI);
  return item == 1 ? Bump{0.2 * L, 0.8 * L, 1.0} : Bump{1.2 * L, 1.8 * L, 1.0};
}

namespace {

/// ∫_lo^hi g(t) e^{πt} dt exactly: g is a quartic on its support.
Real bump_exp_integral(const Bump& g, const Real& lo, const Real& hi) {
  Real a = Real(g.lo), b = Real(g.hi);
  Real u = std::max(lo, a), v = std::min(hi, b);
  if (!(u < v)) return Real(0);
  // s = α t + β, g = amp (1 − s²)²
  Real alpha = Real(2) / (b - a);
  Real beta = -(a + b) / (b - a);
  // (1 − s²) as polynomial in t: 1 − β² − 2αβ t − α² t²
  Real q0 = 1 - beta * beta, q1 = -2 * alpha * beta, q2 = -alpha * alpha;
  std::vector<Real> c{q0 * q0, 2 * q0 * q1, q1 * q1 + 2 * q0 * q2, 2 * q1 * q2, q2 * q2};
  for (auto& x : c) x *= Real(g.amplitude);
  return poly_exp_integral(std::span<const Real>(c), pi_v<Real>(), u, v);
}

}  // namespace

PrimeSumReport prime_sum_check(int item, u64 m, const Bump& g) {
  ScopedPrecision guard(kRatioDigits);
  if (item != 1 && item != 2) throw DomainError("prime_sum_check: item must be 1 or 2");
  if (m < 3) throw DomainError("prime_sum_check: m must be at least 3");
  if (!(g.lo < g.hi)) throw DomainError("prime_sum_check: empty bump support");
  const double log_m = std::log(static_cast<double>(m));
  if (g.lo < -log_m / M_PI - 1e-12 || g.hi > log_m / M_PI + 1e-12)
    throw DomainError("prime_sum_check: support of g must lie in [-log m/pi, log m/pi]");

  PrimeSumReport rep;
  rep.item = item;
  rep.m = m;
  rep.g = g;

  // n-range where g(log n / 2π) ≠ 0
  long double n_top = std::exp(2 * M_PI * static_cast<long double>(std::max(g.hi, 0.0)));
  u64 hi_n;
  u64 lo_n;
  if (item == 1) {
    lo_n = 2;
    hi_n = n_top >= static_cast<long double>(m - 1) ? m - 1 : static_cast<u64>(n_top);
  } else {
    lo_n = m;
    if (n_top > static_cast<long double>(kSieveBudget))
      throw DomainError("prime_sum_check: tail sum needs n up to " + std::to_string(static_cast<double>(n_top)) +
                        ", beyond the sieve budget");
    hi_n = static_cast<u64>(n_top);
  }
  if (hi_n > kSieveBudget) throw DomainError("prime_sum_check: m beyond the sieve budget");
  rep.sieve_limit = hi_n;

  long double sum = 0;
  if (g.amplitude != 0 && hi_n >= lo_n) {
    const long double two_pi = 2 * static_cast<long double>(M_PI);
    for_each_prime(2, hi_n, [&](u64 p) {
      long double lp = std::log(static_cast<long double>(p));
      for (unsigned __int128 n = p; n <= hi_n; n *= p) {
        if (n < lo_n) continue;
        long double ln = std::log(static_cast<long double>(n));
        long double v = g(static_cast<double>(ln / two_pi));
        if (v != 0) sum += lp / std::sqrt(static_cast<long double>(n)) * v;
      }
    });
  }
  rep.prime_side = Real(sum) / (2 * pi_v<Real>());
  Real L = log(Real(m)) / (2 * pi_v<Real>());
  rep.integral_side = item == 1 ? bump_exp_integral(g, Real(0), L) : bump_exp_integral(g, L, Real(1e6));
  rep.residual = rep.prime_side - rep.integral_side;
  Real norm = Real(g.l1() + g.derivative_l1()) * log(Real(m)) * log(Real(m));
  rep.normalized = norm > 0 ? Real(abs(rep.residual) / norm) : Real(0);
  return rep;
}

ChebyshevReport chebyshev_check(u64 x) {
  ScopedPrecision guard(kRatioDigits);
  if (x > kSieveBudget) throw DomainError("chebyshev_check: x beyond the sieve budget");
  long double psi = 0;
  for_each_prime(2, x, [&](u64 p) {
    long double lp = std::log(static_cast<long double>(p));
    for (unsigned __int128 n = p; n <= x; n *= p) psi += lp;
  });
  ChebyshevReport r;
  r.x = x;
  r.psi = Real(psi);
  r.deviation = r.psi - Real(x);
  Real lx = log(Real(x));
  r.window = sqrt(Real(x)) * lx * lx;
  r.inside = abs(r.deviation) <= r.window;
  return r;
}

}  // namespace fel::nt
