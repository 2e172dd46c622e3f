#include "fel/io.hpp"

#include <fstream>
#include <sstream>
#include <ostream>

namespace fel {

namespace {

std::string decimal_text(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw DomainError(std::string(what) + ": expected a decimal string or number");
}

const nlohmann::json& field(const nlohmann::json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string(what) + ": missing field '" + key + "'");
  return j.at(key);
}

std::vector<Decimal> decimal_array(const nlohmann::json& v, const char* what) {
  if (!v.is_array()) throw DomainError(std::string(what) + ": expected an array");
  std::vector<Decimal> out;
  for (const auto& e : v) out.emplace_back(decimal_text(e, what));
  return out;
}

nlohmann::json string_array(const std::vector<Decimal>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : v) out.push_back(d.str());
  return out;
}

}  // namespace

LowerParams lower_params_from_json(const nlohmann::json& j) {
  LowerParams p;
  p.a = Decimal(decimal_text(field(j, "a", "lower params"), "lower params a"));
  p.c = Decimal(decimal_text(field(j, "c", "lower params"), "lower params c"));
  p.b = decimal_array(field(j, "b", "lower params"), "lower params b");
  p.validate();
  return p;
}

nlohmann::json to_json(const LowerParams& p) {
  return {{"a", p.a.str()}, {"c", p.c.str()}, {"b", string_array(p.b)}};
}

UpperParams upper_params_from_json(const nlohmann::json& j) {
  UpperParams p;
  p.A = Rational(decimal_text(field(j, "A", "upper params"), "upper params A"));
  p.T = decimal_array(field(j, "T", "upper params"), "upper params T");
  p.validate();
  return p;
}

nlohmann::json to_json(const UpperParams& p) { return {{"A", p.A.str()}, {"T", string_array(p.T)}}; }

nlohmann::json to_json(const BoundResult& r, int digits) {
  ScopedPrecision guard(digits + 10);
  std::ostringstream err;
  err.precision(3);
  err << std::scientific << r.err;
  return {{"value", Decimal::from_real(r.value, digits).str()},
          {"err", err.str()},
          {"certified_lower", Decimal::from_real(r.certified_lower(), digits).str()},
          {"certified_upper", Decimal::from_real(r.certified_upper(), digits).str()},
          {"certified", r.certified},
          {"status", to_string(r.status)},
          {"meta", r.meta}};
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

std::vector<UpperTableEntry> load_upper_table(const std::string& path) {
  auto j = read_json_file(path);
  std::vector<UpperTableEntry> out;
  for (const auto& e : field(j, "entries", "upper table")) {
    out.push_back({decimal_text(field(e, "A", "upper table"), "A"), upper_params_from_json(e),
                   decimal_text(field(e, "bound", "upper table"), "bound")});
  }
  return out;
}

std::vector<LowerTableEntry> load_lower_table(const std::string& path) {
  auto j = read_json_file(path);
  std::vector<LowerTableEntry> out;
  for (const auto& e : field(j, "entries", "lower table")) {
    out.push_back({decimal_text(field(e, "A", "lower table"), "A"), lower_params_from_json(e),
                   decimal_text(field(e, "bound", "lower table"), "bound")});
  }
  return out;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n\r") == std::string::npos) {
      out_ << c;
      continue;
    }
    out_ << '"';
    for (char ch : c) {
      if (ch == '"') out_ << '"';
      out_ << ch;
    }
    out_ << '"';
  }
  out_ << '\n';
}

}  // namespace fel
