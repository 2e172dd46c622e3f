#pragma once

// Desk-scale number theory: Legendre/Jacobi symbols, 64-bit primality,
// segmented sieving, and the extremal quantities n_p, r_p, P(a, q).

#include "fel/numeric.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fel::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

/// Jacobi symbol (n/m) for odd m > 0.
int jacobi(i64 n, i64 m);

/// Deterministic for all 64-bit n (Miller-Rabin, prime bases up to 37).
bool is_prime(u64 n);

/// Calls `f(p)` for every prime p in [lo, hi], increasing. Segmented
/// Eratosthenes over odd numbers.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& f);

std::vector<u64> primes_up_to(u64 n);

u64 least_qnr(u64 p);
u64 least_prime_qr(u64 p);
/// Least prime ≡ a (mod q) not above `limit`; empty if there is none.
std::optional<u64> least_prime_in_ap(i64 a, u64 q, u64 limit);

u64 euler_phi(u64 n);

enum class ScanKind { kQnr, kPrimeQr, kAp };

ScanKind parse_scan_kind(const std::string& s);
const char* to_string(ScanKind k);

struct NtRecord {
  u64 key = 0;      // p, or q for kAp
  u64 residue = 0;  // a for kAp
  u64 value = 0;    // n_p, r_p or P(a, q)
  Real ratio;       // value / log²p  or  value / (φ(q) log q)²
};

struct ScanSummary {
  ScanKind kind = ScanKind::kQnr;
  u64 lo = 0, hi = 0;
  u64 count = 0;
  Real max_ratio;
  NtRecord argmax;
  Real comparator;
  Real margin;                       // comparator − max_ratio
  std::vector<NtRecord> exceedances; // records with ratio ≥ comparator (first kMaxExceedances)
  u64 exceedance_count = 0;

  static constexpr std::size_t kMaxExceedances = 64;
};

/// Combines summaries of adjacent chunks; associative, ties keep the smaller key.
ScanSummary merge(const ScanSummary& left, const ScanSummary& right);

/// Scans p (or q) over [lo, hi] in chunks of `chunk` keys. Ratios are computed
/// at 30 significant digits. `sink`, if set, receives every record in order.
ScanSummary scan(ScanKind kind, u64 lo, u64 hi, const Real& comparator, u64 chunk = 1 << 16,
                 const std::function<void(const NtRecord&)>& sink = {});

/// C¹ bump amplitude·(1 − s²)² on [lo, hi] (s the affine image of [lo, hi] on [−1, 1]).
struct Bump {
  double lo = 0;
  double hi = 1;
  double amplitude = 1;

  double operator()(double t) const;
  double l1() const;           // ‖g‖₁
  double derivative_l1() const;  // ‖g′‖₁
};

struct PrimeSumReport {
  int item = 1;       // 1: n < m, 2: n ≥ m
  u64 m = 0;
  Bump g;
  Real prime_side;    // (1/2π) Σ Λ(n)/√n g(log n / 2π)
  Real integral_side; // ∫ g(t) e^{πt} dt over the matching range
  Real residual;
  Real normalized;    // residual / ((‖g‖₁ + ‖g′‖₁) log²m)
  u64 sieve_limit = 0;
};

/// Largest n the prime-sum check will sieve to.
constexpr u64 kSieveBudget = 200'000'000;

/// Both sides of the prime-sum estimate for n < m (item 1) or n ≥ m (item 2).
/// The support of g must lie in [0, log m/π]; item 2 sieves up to e^{2π g.hi}.
PrimeSumReport prime_sum_check(int item, u64 m, const Bump& g);

/// Default bump for an item: [0.2, 0.8]·log m/2π for item 1, [1.2, 1.8]·log m/2π for item 2.
Bump default_bump(int item, u64 m);

struct ChebyshevReport {
  u64 x = 0;
  Real psi;
  Real deviation;    // ψ(x) − x
  Real window;       // √x log²x
  bool inside = false;
};

ChebyshevReport chebyshev_check(u64 x);

}  // namespace fel::nt
