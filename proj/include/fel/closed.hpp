#pragma once

// Closed-form constants: endpoint values, the translated Fejér family, and
// the implied constants C^{-2} for the number-theoretic corollaries.
// All functions evaluate at the current Real default precision.

#include "fel/numeric.hpp"

#include <utility>

namespace fel {

/// Translated Fejér kernel: F̂(t) = (1 − ε|t + c|)₊.
struct FejerParams {
  Real epsilon;
  Real c;
  Real A;

  /// ε > 0, 0 ≤ c ≤ 1/ε, 0 < A < 1.
  void validate() const;
};

/// 2 − 2(A+1) log((3−A)/(A+1)) / |log A| + 2A, without the max with 1.
Real theorem1_first_branch(const Real& A);

/// max{first branch, 1} for 0 < A < 1.
Real theorem1_lower(const Real& A);

/// 2 − 2 log 3 / |log A|.
Real simple_lower(const Real& A);

/// (C(0), C(∞)) = (2, 1).
std::pair<Real, Real> endpoints();

/// J_A of the translated Fejér kernel in closed form.
Real fejer_j_closed(const FejerParams& fp);

/// ε = π / log(1/A), c = log((3−A)/(A+1)) / π.
FejerParams fejer_optimal(const Real& A);

/// bound^{-2}.
Real corollary4_constant(const Real& bound);

/// (1/4)(1 − (ℓ/(ℓ−1)) log((3ℓ−4)/ℓ)/log(ℓ−1) + 1/(ℓ−1))^{−2}, ℓ ≥ 6.
Real corollary4_largeL(long l);

/// (1/4)(1 − log 3 / log(ℓ−1))^{−2}, ℓ ≥ 6.
Real corollary4_largeL_simple(long l);

}  // namespace fel
