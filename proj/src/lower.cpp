#include "fel/lower.hpp"

namespace fel {

void LowerParams::validate() const {
  if (!(a.to_real() > 0)) throw DomainError("lower family: a must be positive");
  if (b.empty()) throw DomainError("lower family: need at least one coefficient b_1");
  bool any = false;
  for (const auto& x : b) any = any || !x.is_zero();
  if (!any) throw DomainError("lower family: all coefficients b_n are zero");
}

namespace {

LowerFamily<Real> real_family(const LowerParams& p, const PrecisionContext& ctx) {
  ctx.validate();
  p.validate();
  return LowerFamily<Real>::from(p);
}

}  // namespace

ErrBounded<Real> l1_norm(const LowerParams& p, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  return l1_norm(real_family(p, ctx), QuadOptions::from(ctx));
}

SignPartition<Real> sign_partition(const LowerParams& p, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  return sign_partition(real_family(p, ctx), ctx.target_abs_err);
}

BoundResult lower_bound(const LowerParams& p, const Rational& A, const PrecisionContext& ctx) {
  ScopedPrecision guard(ctx);
  auto fam = real_family(p, ctx);
  auto pen = A.infinite() ? Penalty<Real>::infinity() : Penalty<Real>::finite(A.to_real());
  auto opt = QuadOptions::from(ctx);
  auto j = j_functional(fam, pen, opt);

  BoundResult r;
  r.value = j.value;
  r.err = j.err;
  r.status = j.status;
  r.certified = j.status == Status::kOk;

  auto parts = j_parts(fam, opt.tol);
  auto l1 = l1_norm(fam, opt);
  auto part = sign_partition(fam, opt.tol);
  r.meta["kind"] = "lower";
  r.meta["A"] = A.str();
  r.meta["digits"] = ctx.digits;
  r.meta["l1_norm"] = l1.value.str(20);
  r.meta["l1_err"] = l1.err;
  r.meta["negative_axis"] = parts.negative_axis.str(20);
  r.meta["minus_part"] = parts.minus_part.str(20);
  r.meta["plus_part"] = parts.plus_part.str(20);
  r.meta["ambiguous"] = parts.ambiguous.str(6);
  r.meta["sign_changes"] = part.breakpoints.size();
  r.meta["uncertain_sign"] = part.uncertain.size();
  return r;
}

}  // namespace fel
