#include "fel/upper.hpp"

namespace fel {

void UpperParams::validate() const {
  if (A.infinite() && !T.empty()) throw DomainError("upper family: A = inf admits only psi = 0 (empty T)");
  Real prev = 0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    Real t = T[i].to_real();
    if (!(t > prev)) {
      throw DomainError(i == 0 ? "upper family: T_1 must be positive"
                               : "upper family: T must be strictly increasing (at T_" + std::to_string(i + 1) + ")");
    }
    prev = t;
  }
}

UpperParams canonicalize(const UpperParams& p) {
  UpperParams out{p.A, {}};
  std::vector<Decimal> t = p.T;
  // piece n = [T_n, T_{n+1}]; an empty interior piece n merges pieces n-1 and n+1
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (t[i].to_real() == t[i + 1].to_real()) {
        if (i + 2 == t.size()) t.erase(t.begin() + i + 1);  // empty last piece
        else t.erase(t.begin() + i, t.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  out.T = std::move(t);
  return out;
}

namespace {

UpperFamily<Real> real_family(const UpperParams& p, const PrecisionContext& ctx) {
  ctx.validate();
  p.validate();
  return UpperFamily<Real>::from(p);
}

BoundResult to_result(const CertifiedSup<Real>& s, const UpperParams& p, const PrecisionContext& ctx,
                      const SupOptions& opt, const Real& lo) {
  BoundResult r;
  r.value = s.value;
  r.err = to_double(s.upper - s.value);
  r.status = s.status;
  r.certified = s.status == Status::kOk;
  r.meta["kind"] = "upper";
  r.meta["A"] = p.A.str();
  r.meta["digits"] = ctx.digits;
  r.meta["grid_step"] = s.grid_step;
  r.meta["bb_tol"] = opt.tol;
  r.meta["lipschitz"] = to_double(s.lipschitz);
  r.meta["curvature"] = to_double(s.curvature);
  r.meta["t_max"] = to_double(s.t_max);
  r.meta["t_min"] = to_double(lo);
  r.meta["argmax"] = s.argmax.str(20);
  r.meta["evaluations"] = s.evaluations;
  r.meta["cells"] = s.cells;
  return r;
}

}  // namespace

BoundResult sup_norm(const UpperParams& p, const PrecisionContext& ctx, const SupOptions& opt) {
  return sup_beyond(p, Real(0), ctx, opt);
}

BoundResult sup_beyond(const UpperParams& p, const Real& lo_in, const PrecisionContext& ctx,
                       const SupOptions& opt) {
  ScopedPrecision guard(ctx);
  auto fam = real_family(p, ctx);
  Real lo = lo_in;
  if (lo < 0) lo = -lo;
  auto s = certified_sup(fam, lo, opt.grid_step, opt.tol, opt.max_evaluations);
  return to_result(s, p, ctx, opt, lo);
}

std::vector<LocalMax<Real>> local_maxima(const UpperParams& p, const Real& lo, const Real& hi,
                                         const PrecisionContext& ctx, Axis axis) {
  ScopedPrecision guard(ctx);
  auto fam = real_family(p, ctx);
  return local_maxima(fam, Real(lo), Real(hi), axis, 1e-3, ctx.target_abs_err);
}

}  // namespace fel
