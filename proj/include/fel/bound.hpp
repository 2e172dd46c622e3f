#pragma once

#include "fel/numeric.hpp"

#include <json.hpp>

namespace fel {

/// A computed bound: `value` is the best estimate, `err` its error radius.
/// For upper bounds the certified quantity is value + err, for lower bounds
/// value - err.
struct BoundResult {
  Real value;
  double err = 0;
  bool certified = false;
  Status status = Status::kOk;
  nlohmann::json meta = nlohmann::json::object();

  Real certified_upper() const { return value + Real(err); }
  Real certified_lower() const { return value - Real(err); }
};

/// Penalty weight A of the extremal problems, possibly infinite.
template <class T>
struct Penalty {
  bool infinite = false;
  T value{};

  static Penalty finite(T v) { return {false, std::move(v)}; }
  static Penalty infinity() { return {true, T(0)}; }
};

}  // namespace fel
