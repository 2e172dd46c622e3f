#pragma once

// JSON and CSV serialization. Every real number crosses the boundary as a
// decimal string so that no binary rounding happens on the way in or out.

#include "fel/bound.hpp"
#include "fel/lower.hpp"
#include "fel/upper.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fel {

/// {"a": "...", "c": "...", "b": ["...", ...]}. Plain JSON numbers are also
/// accepted and taken at their shortest printed form.
LowerParams lower_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LowerParams& p);

/// {"A": "1/3", "T": ["...", ...]}.
UpperParams upper_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UpperParams& p);

/// value, err, certified bounds and status; decimals carry `digits` digits.
nlohmann::json to_json(const BoundResult& r, int digits);

/// One entry of a shipped parameter table.
struct UpperTableEntry {
  std::string A;
  UpperParams params;
  std::string published;  // printed bound
};

struct LowerTableEntry {
  std::string A;
  LowerParams params;
  std::string published;
};

std::vector<UpperTableEntry> load_upper_table(const std::string& path);
std::vector<LowerTableEntry> load_lower_table(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

/// RFC 4180 style CSV with LF line endings. Cells holding a comma, quote or
/// newline are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace fel
