#include "fel/cli.hpp"

#include "fel/closed.hpp"
#include "fel/io.hpp"
#include "fel/nt.hpp"
#include "fel/search.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#ifndef FEL_DEFAULT_DATA_DIR
#define FEL_DEFAULT_DATA_DIR "data"
#endif

namespace fel {

std::string data_dir() {
  if (const char* env = std::getenv("FEL_DATA_DIR"); env && *env) return env;
  return FEL_DEFAULT_DATA_DIR;
}

namespace {

using nlohmann::json;

constexpr int kMaxDigits = 100;
constexpr int kDefaultDigits = 40;
constexpr const char* kNtNote =
    "finite-range consistency check of a GRH-conditional asymptotic statement; not a proof";

int default_digits() {
  if (const char* env = std::getenv("FEL_DIGITS"); env && *env) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("FEL_DIGITS is not an integer: ") + env);
    }
  }
  return kDefaultDigits;
}

// What a command produces: a JSON document, plus an optional table for CSV.
struct Report {
  json doc = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int code = kExitCertified;
};

struct Common {
  int digits = 0;
  std::string out_path;
  std::string format;
  std::string config_path;
};

void add_common(CLI::App* sub, Common& c, const char* default_format) {
  c.format = default_format;
  sub->add_option("--digits", c.digits, "working precision in decimal digits (30..100; default $FEL_DIGITS or 40)");
  sub->add_option("--out", c.out_path, "write the result here instead of stdout");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", c.config_path, "JSON file of flag values; flags given on the command line win");
}

// Config keys are flag names without the leading dashes.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  json cfg = read_json_file(path);
  if (!cfg.is_object()) throw DomainError(path + ": config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw DomainError(path + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    std::vector<std::string> vals;
    auto text = [](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      return v.dump();
    };
    if (value.is_array()) {
      for (const auto& v : value) vals.push_back(text(v));
    } else {
      vals.push_back(text(value));
    }
    for (auto& v : vals) opt->add_result(v);
    opt->run_callback();
  }
}

PrecisionContext make_context(Common& c) {
  if (c.digits == 0) c.digits = default_digits();
  if (c.digits > kMaxDigits) throw DomainError("--digits must not exceed 100");
  auto ctx = PrecisionContext::with_digits(c.digits);
  ctx.validate();
  return ctx;
}

std::string dec(const Real& x, int digits) { return Decimal::from_real(x, digits).str(); }

// Rounds x to `places` decimals towards +∞ (up) or −∞.
std::string round_dir(const Real& x, int places, bool up) {
  Real scale = pow(Real(10), places);
  Real y = up ? ceil(x * scale) : floor(x * scale);
  std::ostringstream s;
  s << std::fixed << std::setprecision(places) << (y / scale);
  return s.str();
}

bool same_A(const std::string& a, const std::string& b) {
  Rational x(a), y(b);
  if (x.infinite() || y.infinite()) return x.infinite() && y.infinite();
  ScopedPrecision guard(60);
  return x.to_real() == y.to_real();
}

// Reads params from FILE: either one object or a table with "entries", in
// which case `A` picks the entry.
json params_document(const std::string& path, const std::string& A) {
  json j = read_json_file(path);
  if (!j.contains("entries")) return j;
  if (A.empty()) throw DomainError(path + ": holds a table; pass --A to pick an entry");
  for (const auto& e : j.at("entries")) {
    if (e.contains("A") && same_A(e.at("A").get<std::string>(), A)) return e;
  }
  throw DomainError(path + ": no entry for A = " + A);
}

std::string table_path(const char* name) { return data_dir() + "/" + name; }

void emit(const Report& r, const Common& c, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out_path.empty()) {
    file.open(c.out_path, std::ios::binary);
    if (!file) throw DomainError("cannot write " + c.out_path);
    os = &file;
  }
  if (c.format == "csv" && !r.header.empty()) {
    CsvWriter w(*os);
    w.row(r.header);
    for (const auto& row : r.rows) w.row(row);
  } else {
    *os << r.doc.dump(2) << '\n';
  }
}

std::vector<std::string> bound_row(const BoundResult& b, int digits) {
  ScopedPrecision guard(digits + 10);
  auto j = to_json(b, digits);
  return {j["value"].get<std::string>(), j["err"].get<std::string>(), j["certified_lower"].get<std::string>(),
          j["certified_upper"].get<std::string>(), b.certified ? "true" : "false", to_string(b.status)};
}

const std::vector<std::string> kBoundHeader = {"value", "err", "certified_lower", "certified_upper", "certified",
                                                "status"};

// ---- lower-eval -------------------------------------------------------------

struct LowerEvalArgs {
  Common common;
  std::string A, params, a, c;
  std::vector<std::string> b;
};

Report cmd_lower_eval(LowerEvalArgs& x) {
  auto ctx = make_context(x.common);
  json doc = x.params.empty() ? json::object() : params_document(x.params, x.A);
  if (!x.a.empty()) doc["a"] = x.a;
  if (!x.c.empty()) doc["c"] = x.c;
  if (!x.b.empty()) doc["b"] = x.b;
  if (!doc.contains("a")) doc["a"] = "1";
  if (!doc.contains("c")) doc["c"] = "0";
  std::string A = !x.A.empty() ? x.A : doc.value("A", std::string());
  if (A.empty()) throw DomainError("lower-eval: --A is required");
  auto p = lower_params_from_json(doc);
  Rational rA(A);
  auto bound = lower_bound(p, rA, ctx);

  Report r;
  r.doc = {{"command", "lower-eval"}, {"A", rA.str()}, {"digits", ctx.digits}, {"params", to_json(p)},
           {"bound", to_json(bound, ctx.digits)}};
  r.header = {"A"};
  r.header.insert(r.header.end(), kBoundHeader.begin(), kBoundHeader.end());
  auto row = bound_row(bound, ctx.digits);
  row.insert(row.begin(), rA.str());
  r.rows.push_back(row);
  r.code = bound.certified ? kExitCertified : kExitUnconverged;
  return r;
}

// ---- upper-eval -------------------------------------------------------------

struct UpperEvalArgs {
  Common common;
  std::string A, params, tail;
  std::vector<std::string> T, maxima;
};

Report cmd_upper_eval(UpperEvalArgs& x) {
  auto ctx = make_context(x.common);
  json doc = x.params.empty() ? json::object() : params_document(x.params, x.A);
  if (!x.A.empty()) doc["A"] = x.A;
  if (!x.T.empty()) doc["T"] = x.T;
  if (!doc.contains("T")) doc["T"] = json::array();
  if (!doc.contains("A")) throw DomainError("upper-eval: --A is required");
  auto p = upper_params_from_json(doc);
  auto bound = sup_norm(p, ctx);

  Report r;
  r.doc = {{"command", "upper-eval"}, {"A", p.A.str()}, {"digits", ctx.digits}, {"params", to_json(p)},
           {"bound", to_json(bound, ctx.digits)}};
  bool ok = bound.certified;
  ScopedPrecision guard(ctx);
  if (!x.maxima.empty()) {
    if (x.maxima.size() != 2) throw DomainError("--maxima takes LO HI (units of t/π)");
    auto found = local_maxima(p, Decimal(x.maxima[0]).to_real(), Decimal(x.maxima[1]).to_real(), ctx, Axis::kOverPi);
    json list = json::array();
    for (const auto& m : found) {
      list.push_back({{"t_over_pi", dec(m.t, 20)}, {"t", dec(m.t * pi_v<Real>(), 20)}, {"value", dec(m.value, 20)},
                      {"status", to_string(m.status)}});
    }
    r.doc["local_maxima"] = list;
  }
  if (!x.tail.empty()) {
    // tail bound beyond LO, LO in units of t/π
    auto tb = sup_beyond(p, Decimal(x.tail).to_real() * pi_v<Real>(), ctx);
    r.doc["tail"] = {{"from_t_over_pi", x.tail}, {"bound", to_json(tb, ctx.digits)}};
    ok = ok && tb.certified;
  }
  r.header = {"A"};
  r.header.insert(r.header.end(), kBoundHeader.begin(), kBoundHeader.end());
  auto row = bound_row(bound, ctx.digits);
  row.insert(row.begin(), p.A.str());
  r.rows.push_back(row);
  r.code = ok ? kExitCertified : kExitUnconverged;
  return r;
}

// ---- search -----------------------------------------------------------------

struct SearchArgs {
  Common common;
  std::string problem, A, start, transcript;
  int N = 12;
  SearchConfig cfg;
};

Report cmd_search(SearchArgs& x) {
  auto ctx = make_context(x.common);
  if (x.A.empty()) throw DomainError("search: --A is required");
  Rational A(x.A);
  std::ofstream tfile;
  TranscriptSink sink;
  if (!x.transcript.empty()) {
    tfile.open(x.transcript, std::ios::binary);
    if (!tfile) throw DomainError("cannot write " + x.transcript);
    sink = [&tfile](const json& j) { tfile << j.dump() << '\n'; };
  }
  Report r;
  r.doc = {{"command", "search"}, {"problem", x.problem}, {"A", A.str()}, {"digits", ctx.digits},
           {"seed", x.cfg.seed}, {"restarts", x.cfg.restarts}, {"budget", x.cfg.budget}};
  BoundResult bound;
  if (x.problem == "upper") {
    std::optional<UpperParams> start;
    if (!x.start.empty()) {
      json d = params_document(x.start, x.A);
      d["A"] = x.A;
      start = upper_params_from_json(d);
    }
    auto res = search_upper(A, x.cfg, ctx, start, sink);
    bound = res.bound;
    r.doc["params"] = to_json(res.params);
    r.doc["evaluations"] = res.evaluations;
    r.doc["status"] = to_string(res.status);
  } else {
    std::optional<LowerParams> start;
    if (!x.start.empty()) start = lower_params_from_json(params_document(x.start, x.A));
    auto res = search_lower(A, x.N, x.cfg, ctx, start, sink);
    bound = res.bound;
    r.doc["N"] = x.N;
    r.doc["params"] = to_json(res.params);
    r.doc["evaluations"] = res.evaluations;
    r.doc["status"] = to_string(res.status);
  }
  r.doc["bound"] = to_json(bound, ctx.digits);
  r.header = {"problem", "A"};
  r.header.insert(r.header.end(), kBoundHeader.begin(), kBoundHeader.end());
  auto row = bound_row(bound, ctx.digits);
  row.insert(row.begin(), {x.problem, A.str()});
  r.rows.push_back(row);
  r.code = bound.certified ? kExitCertified : kExitUnconverged;
  return r;
}

// ---- bounds -----------------------------------------------------------------

struct BoundsArgs {
  Common common;
  bool printed_only = false;
  std::vector<long> ells{6, 10, 100, 1000, 1000000};
};

Report cmd_bounds(BoundsArgs& x) {
  auto ctx = make_context(x.common);
  ScopedPrecision guard(ctx);
  auto uppers = load_upper_table(table_path("table1_upper.json"));
  auto lowers = load_lower_table(table_path("table2_lower.json"));

  Report r;
  r.header = {"kind", "A", "ell", "theorem1_lower", "table_lower", "table_upper", "computed_lower", "computed_upper",
              "constant", "constant_limit", "computed_constant", "formula_simple"};
  json table = json::array();
  bool ok = true;
  for (const auto& lo : lowers) {
    const UpperTableEntry* up = nullptr;
    for (const auto& u : uppers)
      if (same_A(u.A, lo.A)) up = &u;
    if (!up) continue;
    Rational A(lo.A);
    Real a = A.to_real();
    Real inv = 1 / a;
    std::string ell;
    if (a <= 1 && inv == floor(inv)) ell = std::to_string(static_cast<long>(inv.convert_to<double>()) + 1);
    std::string t1 = a < 1 ? dec(theorem1_lower(a), 12) : "";
    Real tl = Decimal(lo.published).to_real(), tu = Decimal(up->published).to_real();
    // C^{-2} < lower^{-2}: round up; the method cannot beat upper^{-2}: round down
    std::string k = round_dir(corollary4_constant(tl), 4, true);
    std::string klim = round_dir(corollary4_constant(tu), 4, false);
    std::string cl, cu, ck;
    json row = {{"kind", "table"}, {"A", A.str()}, {"ell", ell}, {"theorem1_lower", t1}, {"table_lower", lo.published},
                {"table_upper", up->published}, {"constant", k}, {"constant_limit", klim}};
    if (!x.printed_only) {
      auto lb = lower_bound(lo.params, A, ctx);
      auto ub = sup_norm(up->params, ctx);
      ok = ok && lb.certified && ub.certified;
      cl = dec(lb.certified_lower(), 12);
      cu = dec(ub.certified_upper(), 12);
      ck = round_dir(corollary4_constant(lb.certified_lower()), 6, true);
      row["computed_lower"] = cl;
      row["computed_upper"] = cu;
      row["computed_constant"] = ck;
      row["computed_sandwich"] = lb.certified_lower() <= ub.certified_upper();
    }
    table.push_back(row);
    r.rows.push_back({"table", A.str(), ell, t1, lo.published, up->published, cl, cu, k, klim, ck, ""});
  }
  for (long l : x.ells) {
    if (l < 6) throw DomainError("--ell values must be at least 6");
    Real A = Real(1) / Real(l - 1);
    std::string t1 = dec(theorem1_lower(A), 12);
    std::string k = round_dir(corollary4_largeL(l), 4, true);
    std::string ks = round_dir(corollary4_largeL_simple(l), 4, true);
    table.push_back({{"kind", "large-ell"}, {"ell", l}, {"A", "1/" + std::to_string(l - 1)}, {"theorem1_lower", t1},
                     {"constant", k}, {"constant_exact", dec(corollary4_largeL(l), 12)}, {"formula_simple", ks}});
    r.rows.push_back({"large-ell", "1/" + std::to_string(l - 1), std::to_string(l), t1, "", "", "", "", k, "", "", ks});
  }
  auto [c0, cinf] = endpoints();
  r.doc = {{"command", "bounds"},
           {"digits", ctx.digits},
           {"endpoints", {{"C(0)", dec(c0, 12)}, {"C(inf)", dec(cinf, 12)}}},
           {"rows", table}};
  r.code = ok ? kExitCertified : kExitUnconverged;
  return r;
}

// ---- plot-data --------------------------------------------------------------

struct PlotArgs {
  Common common;
  std::string figure = "g1", A, params, axis = "over-pi";
  std::vector<std::string> range;
  std::optional<int> samples;
};

Report cmd_plot_data(PlotArgs& x) {
  auto ctx = make_context(x.common);
  ScopedPrecision guard(ctx);
  Report r;
  const bool upper = x.figure == "g1" || x.figure == "upper";
  if (!x.range.empty() && x.range.size() != 2) throw DomainError("--range takes LO HI");
  std::string lo_s = x.range.empty() ? (upper ? "0" : "-4") : x.range[0];
  std::string hi_s = x.range.empty() ? (upper ? "15" : "1") : x.range[1];
  int samples = x.samples.value_or(3000);
  Real lo = Decimal(lo_s).to_real(), hi = Decimal(hi_s).to_real();
  if (!(lo < hi)) throw DomainError("--range needs LO < HI");
  constexpr int kCellDigits = 20;
  json curves = json::array();

  if (upper) {
    std::string A = x.figure == "g1" ? "1" : x.A;
    if (A.empty() && x.params.empty()) throw DomainError("plot-data: --A or --params is required");
    json doc = params_document(x.params.empty() ? table_path("table1_upper.json") : x.params, A);
    if (!A.empty()) doc["A"] = A;
    auto p = upper_params_from_json(doc);
    Axis axis = x.axis == "natural" ? Axis::kNatural : Axis::kOverPi;
    auto pts = figure_data_upper(UpperFamily<Real>::from(p), lo, hi, samples, axis);
    std::string xname = axis == Axis::kOverPi ? "t_over_pi" : "t";
    r.header = {"A", xname, "re_g", "abs_g"};
    json list = json::array();
    Real best = -1, at = 0;
    for (const auto& q : pts) {
      r.rows.push_back({p.A.str(), dec(q.x, kCellDigits), dec(q.re, kCellDigits), dec(q.modulus, kCellDigits)});
      list.push_back({dec(q.x, kCellDigits), dec(q.re, kCellDigits), dec(q.modulus, kCellDigits)});
      if (q.modulus > best) {
        best = q.modulus;
        at = q.x;
      }
    }
    curves.push_back({{"A", p.A.str()}, {"columns", {xname, "re_g", "abs_g"}}, {"points", list},
                      {"max_sample", dec(best, kCellDigits)}, {"argmax_sample", dec(at, kCellDigits)}});
  } else if (x.figure == "lower" || x.figure == "lower-family") {
    std::vector<std::pair<std::string, LowerParams>> fams;
    if (x.figure == "lower-family") {
      for (const auto& e : load_lower_table(table_path("table2_lower.json"))) fams.emplace_back(e.A, e.params);
    } else {
      if (x.A.empty() && x.params.empty()) throw DomainError("plot-data: --A or --params is required");
      json doc = params_document(x.params.empty() ? table_path("table2_lower.json") : x.params, x.A);
      fams.emplace_back(x.A.empty() ? doc.value("A", std::string()) : x.A, lower_params_from_json(doc));
    }
    r.header = {"A", "t", "Fhat"};
    for (const auto& [A, p] : fams) {
      auto pts = figure_data_lower(LowerFamily<Real>::from(p), lo, hi, samples);
      json list = json::array();
      for (const auto& q : pts) {
        r.rows.push_back({A, dec(q.t, kCellDigits), dec(q.value, kCellDigits)});
        list.push_back({dec(q.t, kCellDigits), dec(q.value, kCellDigits)});
      }
      curves.push_back({{"A", A}, {"columns", {"t", "Fhat"}}, {"points", list}});
    }
  } else {
    throw DomainError("unknown figure '" + x.figure + "' (g1, upper, lower, lower-family)");
  }
  r.doc = {{"command", "plot-data"}, {"figure", x.figure}, {"curves", curves}};
  return r;
}

// ---- nt ---------------------------------------------------------------------

struct NtArgs {
  Common common;
  std::string kind = "qnr", comparator, records;
  std::uint64_t min_key = 0, max_key = 0, m = 1000000, x = 1000000;
  int item = 1;
  std::vector<double> bump;
};

json record_json(const nt::NtRecord& rec) {
  return {{"key", rec.key}, {"residue", rec.residue}, {"value", rec.value}, {"ratio", dec(rec.ratio, 12)}};
}

Report cmd_nt(NtArgs& x) {
  auto ctx = make_context(x.common);
  ScopedPrecision guard(ctx);
  Report r;
  if (x.kind == "qnr" || x.kind == "prime-qr" || x.kind == "ap") {
    auto kind = nt::parse_scan_kind(x.kind);
    const bool ap = kind == nt::ScanKind::kAp;
    std::string cmp = !x.comparator.empty() ? x.comparator : ap ? "8/9" : "0.7615";
    std::uint64_t lo = x.min_key != 0 ? x.min_key : 3;
    std::uint64_t hi = x.max_key != 0 ? x.max_key : ap ? 500 : 1000000;
    std::ofstream rec_file;
    std::unique_ptr<CsvWriter> rec_csv;
    std::function<void(const nt::NtRecord&)> sink;
    if (!x.records.empty()) {
      rec_file.open(x.records, std::ios::binary);
      if (!rec_file) throw DomainError("cannot write " + x.records);
      rec_csv = std::make_unique<CsvWriter>(rec_file);
      rec_csv->row({ap ? "q" : "p", "residue", "value", "ratio"});
      sink = [&](const nt::NtRecord& rec) {
        rec_csv->row({std::to_string(rec.key), std::to_string(rec.residue), std::to_string(rec.value),
                      dec(rec.ratio, 12)});
      };
    }
    auto s = nt::scan(kind, lo, hi, Rational(cmp).to_real(), 1 << 16, sink);
    json ex = json::array();
    for (const auto& e : s.exceedances) ex.push_back(record_json(e));
    r.doc = {{"command", "nt"},
             {"kind", nt::to_string(kind)},
             {"lo", s.lo},
             {"hi", s.hi},
             {"count", s.count},
             {"max_ratio", dec(s.max_ratio, 12)},
             {"argmax", record_json(s.argmax)},
             {"comparator", cmp},
             {"margin", dec(s.margin, 12)},
             {"exceedance_count", s.exceedance_count},
             {"exceedances", ex},
             {"note", kNtNote}};
    r.header = {"kind", "lo", "hi", "count", "max_ratio", "argmax_key", "argmax_residue", "argmax_value",
                "comparator", "margin", "exceedance_count"};
    r.rows.push_back({nt::to_string(kind), std::to_string(s.lo), std::to_string(s.hi), std::to_string(s.count),
                      dec(s.max_ratio, 12), std::to_string(s.argmax.key), std::to_string(s.argmax.residue),
                      std::to_string(s.argmax.value), cmp, dec(s.margin, 12), std::to_string(s.exceedance_count)});
  } else if (x.kind == "prime-sum") {
    nt::Bump g = nt::default_bump(x.item, x.m);
    if (!x.bump.empty()) {
      if (x.bump.size() != 3) throw DomainError("--bump takes LO HI AMPLITUDE");
      g = {x.bump[0], x.bump[1], x.bump[2]};
    }
    auto rep = nt::prime_sum_check(x.item, x.m, g);
    r.doc = {{"command", "nt"},
             {"kind", "prime-sum"},
             {"item", rep.item},
             {"m", rep.m},
             {"bump", {{"lo", g.lo}, {"hi", g.hi}, {"amplitude", g.amplitude}}},
             {"prime_side", dec(rep.prime_side, 20)},
             {"integral_side", dec(rep.integral_side, 20)},
             {"residual", dec(rep.residual, 12)},
             {"normalized", dec(rep.normalized, 12)},
             {"sieve_limit", rep.sieve_limit},
             {"note", kNtNote}};
    r.header = {"item", "m", "prime_side", "integral_side", "residual", "normalized"};
    r.rows.push_back({std::to_string(rep.item), std::to_string(rep.m), dec(rep.prime_side, 20),
                      dec(rep.integral_side, 20), dec(rep.residual, 12), dec(rep.normalized, 12)});
  } else if (x.kind == "chebyshev") {
    auto rep = nt::chebyshev_check(x.x);
    r.doc = {{"command", "nt"},         {"kind", "chebyshev"},
             {"x", rep.x},              {"psi", dec(rep.psi, 20)},
             {"deviation", dec(rep.deviation, 12)}, {"window", dec(rep.window, 12)},
             {"inside", rep.inside},    {"note", kNtNote}};
    r.header = {"x", "psi", "deviation", "window", "inside"};
    r.rows.push_back({std::to_string(rep.x), dec(rep.psi, 20), dec(rep.deviation, 12), dec(rep.window, 12),
                      rep.inside ? "true" : "false"});
  } else {
    throw DomainError("unknown nt kind '" + x.kind + "' (qnr, prime-qr, ap, prime-sum, chebyshev)");
  }
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Certified bounds for the Fourier extremal problems and number-theory scans", "fel");
  app.require_subcommand(1);

  LowerEvalArgs le;
  auto* s_le = app.add_subcommand("lower-eval", "certified J_A of a lower-family test function");
  add_common(s_le, le.common, "json");
  s_le->add_option("--A", le.A, "penalty A (rational string or inf)");
  s_le->add_option("--params", le.params, "LowerParams JSON, or a table file with --A picking the entry");
  s_le->add_option("--a", le.a, "scale a > 0");
  s_le->add_option("--c", le.c, "shift c");
  s_le->add_option("--b", le.b, "coefficients b_1..b_N");

  UpperEvalArgs ue;
  auto* s_ue = app.add_subcommand("upper-eval", "certified sup norm of g_A for a step function");
  add_common(s_ue, ue.common, "json");
  s_ue->add_option("--A", ue.A, "penalty A (rational string)");
  s_ue->add_option("--params", ue.params, "UpperParams JSON, or a table file with --A picking the entry");
  s_ue->add_option("--T", ue.T, "breakpoints T_1 < ... < T_N");
  s_ue->add_option("--maxima", ue.maxima, "also list local maxima of |g_A| on [LO, HI] (units of t/π)")
      ->expected(2);
  s_ue->add_option("--tail", ue.tail, "also certify sup |g_A| beyond LO (units of t/π)");

  SearchArgs se;
  auto* s_se = app.add_subcommand("search", "multistart search for better test functions");
  add_common(s_se, se.common, "json");
  s_se->add_option("--problem", se.problem, "upper or lower")->required()->check(CLI::IsMember({"upper", "lower"}));
  s_se->add_option("--A", se.A, "penalty A");
  s_se->add_option("--N", se.N, "number of coefficients (lower)");
  s_se->add_option("--seed", se.cfg.seed, "random seed");
  s_se->add_option("--restarts", se.cfg.restarts, "restarts (per N for upper)");
  s_se->add_option("--budget", se.cfg.budget, "objective evaluations for the whole search");
  s_se->add_option("--n-max", se.cfg.n_max, "largest N (upper)");
  s_se->add_option("--local-tol", se.cfg.local_tol, "local minimizer tolerance");
  s_se->add_option("--fast-digits", se.cfg.fast_mode_digits, "search precision (<= 17 runs in double)");
  s_se->add_option("--threads", se.cfg.threads, "restart workers (0 = all cores)");
  s_se->add_option("--start", se.start, "params JSON to start from (table file: entry picked by --A)");
  s_se->add_option("--transcript", se.transcript, "write incumbent improvements as JSON lines");

  BoundsArgs bo;
  auto* s_bo = app.add_subcommand("bounds", "table of bounds and implied constants");
  add_common(s_bo, bo.common, "json");
  s_bo->add_flag("--printed-only", bo.printed_only, "skip recomputing the table bounds");
  s_bo->add_option("--ell", bo.ells, "character orders for the large-ell rows");

  PlotArgs pl;
  auto* s_pl = app.add_subcommand("plot-data", "sample curves for plotting");
  add_common(s_pl, pl.common, "csv");
  s_pl->add_option("--figure", pl.figure, "g1, upper, lower or lower-family");
  s_pl->add_option("--A", pl.A, "picks the table entry (upper, lower)");
  s_pl->add_option("--params", pl.params, "params JSON instead of the shipped table");
  s_pl->add_option("--range", pl.range, "LO HI")->expected(2);
  s_pl->add_option("--samples", pl.samples, "number of samples");
  s_pl->add_option("--axis", pl.axis, "natural or over-pi (upper curves)")
      ->check(CLI::IsMember({"natural", "over-pi"}));

  NtArgs na;
  auto* s_nt = app.add_subcommand("nt", "number-theory scans and checks");
  add_common(s_nt, na.common, "json");
  s_nt->add_option("--kind", na.kind, "qnr, prime-qr, ap, prime-sum or chebyshev");
  s_nt->add_option("--min-p", na.min_key, "smallest prime scanned");
  s_nt->add_option("--max-p", na.max_key, "largest prime scanned");
  s_nt->add_option("--min-q", na.min_key, "smallest modulus scanned (ap)");
  s_nt->add_option("--max-q", na.max_key, "largest modulus scanned (ap)");
  s_nt->add_option("--comparator", na.comparator, "ratio threshold (default 0.7615, or 8/9 for ap)");
  s_nt->add_option("--records", na.records, "write every record as CSV");
  s_nt->add_option("--m", na.m, "cut point m (prime-sum)");
  s_nt->add_option("--item", na.item, "1: n < m, 2: n >= m (prime-sum)")->check(CLI::IsMember({1, 2}));
  s_nt->add_option("--bump", na.bump, "LO HI AMPLITUDE of the bump (prime-sum)")->expected(3);
  s_nt->add_option("--x", na.x, "x for the Chebyshev check");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitDomain;
  }

  try {
    Report r;
    Common* common = nullptr;
    if (s_le->parsed()) {
      apply_config(s_le, le.common.config_path);
      r = cmd_lower_eval(le);
      common = &le.common;
    } else if (s_ue->parsed()) {
      apply_config(s_ue, ue.common.config_path);
      r = cmd_upper_eval(ue);
      common = &ue.common;
    } else if (s_se->parsed()) {
      apply_config(s_se, se.common.config_path);
      r = cmd_search(se);
      common = &se.common;
    } else if (s_bo->parsed()) {
      apply_config(s_bo, bo.common.config_path);
      r = cmd_bounds(bo);
      common = &bo.common;
    } else if (s_pl->parsed()) {
      apply_config(s_pl, pl.common.config_path);
      r = cmd_plot_data(pl);
      common = &pl.common;
    } else {
      apply_config(s_nt, na.common.config_path);
      r = cmd_nt(na);
      common = &na.common;
    }
    emit(r, *common, out);
    return r.code;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fel
