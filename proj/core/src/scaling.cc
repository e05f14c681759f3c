#include "contain/scaling.h"

#include <cmath>
#include <string>

#include "contain/errors.h"

namespace contain {

ScalingResult MaxScale(const LinearPencil& a, const LinearPencil& b,
                       Variant variant, const CriteriaOptions& opts) {
  if (!a.IsMonic() || !b.IsMonic()) throw UsageError("MaxScale: both pencils must be monic");
  if (a.n() != b.n()) throw DimensionError("MaxScale: dimension mismatch");
  ScalingResult res;
  res.variant = variant;
  if (variant == Variant::kPositive) {
    const PositivePrecondition pre = CheckPositivePrecondition(a, b, opts);
    if (!pre.ok) throw UsageError("positive variant precondition fails: " + pre.reason);
    res.heuristic = pre.heuristic;
  }
  const HkmSystem sys = BuildHkmSystem(a, b, variant, /*with_scale=*/true);
  const SdpSolution sol = Solve(sys.problem, opts.sdp());
  res.iterations = sol.iterations;
  switch (sol.status) {
    case SdpStatus::kOptimal:
      break;
    case SdpStatus::kInfeasible:
      throw UnboundedSpectrahedron(
          "MaxScale: no nu >= 0 is certified; the inner set is unbounded");
    case SdpStatus::kUnbounded:
      throw NumericalFailure("MaxScale: scale factor is unbounded");
    case SdpStatus::kNumericalFailure:
      throw NumericalFailure("MaxScale: " + sol.message);
  }
  double nu = sol.free(0);
  if (!(nu > 0.0)) {
    res.nu_star = std::max(0.0, nu);
    return res;
  }
  ChoiCertificate cert = ExtractCertificate(sys, sol, Scale(a, nu), b);
  VerifyReport rep = Verify(cert, Scale(a, nu), b, opts.cert_tol);
  // Back off slightly if the boundary solution is not accurate enough.
  for (int attempt = 0; !rep.ok && attempt < 3; ++attempt) {
    nu *= 1.0 - 1e-5 * std::pow(10.0, attempt);
    ContainmentVerdict v = CheckHkm(Scale(a, nu), b, variant, opts);
    res.iterations += v.iterations;
    if (v.kind == VerdictKind::kContained) {
      cert = *v.certificate;
      rep = *v.verify;
    }
  }
  res.nu_star = nu;
  if (rep.ok) {
    res.certificate = std::move(cert);
  }
  res.verify = rep;
  ContainmentVerdict above = CheckHkm(Scale(a, nu + res.confirm_step), b, variant, opts);
  res.iterations += above.iterations;
  res.confirmed_upper = above.kind != VerdictKind::kContained;
  return res;
}

CircumradiusResult HkmCircumradius(const LinearPencil& a, const CriteriaOptions& opts) {
  if (!a.IsMonic()) throw UsageError("HkmCircumradius: pencil must be monic");
  CircumradiusResult out;
  const ScalingResult s = MaxScale(a, BallPencil(a.n(), 1.0), Variant::kExact, opts);
  if (!(s.nu_star > 0.0)) {
    throw UnboundedSpectrahedron("HkmCircumradius: no enclosing ball is certified");
  }
  out.nu_star = s.nu_star;
  out.radius = 1.0 / s.nu_star;
  out.certificate = s.certificate;
  return out;
}

double BnBound(int mu) {
  if (mu < 1) throw UsageError("BnBound: mu must be >= 1");
  return 2.0 / (M_PI * std::sqrt(static_cast<double>(mu)));
}

}  // namespace contain
