#pragma once

// Derivative-free local minimizers on R^d: Brent's principal-axis method and
// Nelder-Mead. Both count objective evaluations against a budget and return
// the best point seen.

#include "fel/numeric.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fel {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
  std::vector<double> x;
  double f = 0;
  long evaluations = 0;
  Status status = Status::kOk;  // kBudget when the budget ran out
};

struct PraxisOptions {
  double tol = 1e-8;        // t0: absolute tolerance on x
  double max_step = 1.0;    // h0: maximum step size
  long budget = 100000;
  std::uint64_t seed = 1;   // random steps when ill-conditioned
};

MinimizeResult praxis_minimize(const Objective& f, std::vector<double> x0, const PraxisOptions& opt);

struct NelderMeadOptions {
  double step = 0.01;       // initial simplex edge
  double ftol = 1e-12;      // stop when the simplex values agree to this
  double xtol = 1e-10;      // ... and its diameter is below this
  long budget = 100000;
};

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt);

}  // namespace fel
