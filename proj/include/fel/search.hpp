#pragma once

// Search drivers: principal-axis maximization of J_A over the lower family,
// and incremental-N multistart minimization of ‖g_A‖_∞ over the step family.
// Objectives run in fast mode; every returned bound is recomputed at the
// caller's precision.

#include "fel/bound.hpp"
#include "fel/lower.hpp"
#include "fel/optimize.hpp"
#include "fel/upper.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace fel {

struct SearchConfig {
  std::uint64_t seed = 1;
  int n_max = 12;             // largest N tried (upper) / coefficient count (lower)
  int restarts = 8;
  double local_tol = 1e-9;
  long budget = 100000;       // objective evaluations, whole search
  int fast_mode_digits = 15;  // ≤ 17 runs in double
  int threads = 0;            // restart workers; 0 = hardware concurrency

  /// restarts ≥ 1, budget ≥ 1, fast_mode_digits ≥ 15, n_max ≥ 0, threads ≥ 0.
  void validate() const;
};

/// One incumbent improvement, written to the transcript as a JSON line.
using TranscriptSink = std::function<void(const nlohmann::json&)>;

struct LowerSearchResult {
  LowerParams params;
  BoundResult bound;
  long evaluations = 0;
  Status status = Status::kOk;
};

struct UpperSearchResult {
  UpperParams params;
  BoundResult bound;
  long evaluations = 0;
  Status status = Status::kOk;
};

/// Maximizes J_A over (b_1..b_N, log a, c). `start`, if given, seeds the
/// first restart; the others start from seeded random points.
LowerSearchResult search_lower(const Rational& A, int N, const SearchConfig& cfg, const PrecisionContext& ctx,
                               const std::optional<LowerParams>& start = std::nullopt,
                               const TranscriptSink& sink = {});

/// Minimizes ‖g_A‖_∞ for N = 1, 2, ... starting from ψ = 0 (or `start`).
UpperSearchResult search_upper(const Rational& A, const SearchConfig& cfg, const PrecisionContext& ctx,
                               const std::optional<UpperParams>& start = std::nullopt,
                               const TranscriptSink& sink = {});

/// Fast-mode objectives, exposed for tests.
double lower_objective(const Rational& A, const std::vector<double>& x, bool nonpositive_c, int digits);
double upper_objective(const Rational& A, const std::vector<double>& gaps, int digits);

}  // namespace fel
