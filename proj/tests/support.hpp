#pragma once

// Shared helpers for the unit tests.

#include "fel/numeric.hpp"

#include <random>
#include <string>

namespace fel::test {

inline std::string data_file(const char* name) { return std::string(FEL_DATA_DIR) + "/" + name; }

inline double rd(const Real& x) { return x.convert_to<double>(); }

/// |x − y| as a double, computed in Real.
inline double diff(const Real& x, const Real& y) { return abs(x - y).convert_to<double>(); }

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace fel::test
