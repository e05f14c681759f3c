#include "contain/criteria.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "contain/errors.h"

namespace contain {

const char* ToString(VerdictKind k) {
  switch (k) {
    case VerdictKind::kContained:
      return "contained";
    case VerdictKind::kNotContained:
      return "not_contained";
    case VerdictKind::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

const char* MethodName(Variant v) {
  switch (v) {
    case Variant::kExact:
      return "hkm";
    case Variant::kRelaxed:
      return "hkm-relaxed";
    case Variant::kPositive:
      return "hkm-positive";
  }
  return "hkm";
}

int SlackBlock(Variant v, int p) {
  if (v == Variant::kPositive) return 1 + p;
  if (v == Variant::kRelaxed && p == 0) return 1;
  return -1;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

HkmSystem BuildHkmSystem(const LinearPencil& a, const LinearPencil& b,
                         Variant variant, bool with_scale) {
  if (a.n() != b.n()) {
    throw DimensionError("BuildHkmSystem: inner has n = " + std::to_string(a.n()) +
                         ", outer has n = " + std::to_string(b.n()));
  }
  HkmSystem sys;
  sys.n = a.n();
  sys.k = a.k();
  sys.l = b.k();
  sys.variant = variant;
  sys.with_scale = with_scale;
  const int k = sys.k;
  const int l = sys.l;
  ConeSpec cone;
  cone.free = with_scale ? 1 : 0;
  cone.psd.push_back(k * l);
  if (variant == Variant::kRelaxed) cone.psd.push_back(l);
  if (variant == Variant::kPositive) {
    for (int p = 0; p <= sys.n; ++p) cone.psd.push_back(l);
  }
  sys.problem = SdpProblem(cone);
  SdpProblem& prob = sys.problem;
  for (int p = 0; p <= sys.n; ++p) {
    const Matrix& ap = a.mat(p).dense();
    const Matrix& bp = b.mat(p).dense();
    const int sb = SlackBlock(variant, p);
    const bool scaled = with_scale && p > 0;
    for (int t = 0; t < l; ++t) {
      for (int s = t; s < l; ++s) {
        const int row = prob.AddConstraint(scaled ? 0.0 : bp(s, t));
        for (int j = 0; j < k; ++j) {
          for (int i = 0; i < k; ++i) {
            if (ap(i, j) != 0.0) prob.AddEntry(row, 0, i * l + s, j * l + t, ap(i, j));
          }
        }
        if (sb >= 0) prob.AddEntry(row, sb, s, t, 1.0);
        if (scaled && bp(s, t) != 0.0) prob.AddFree(row, 0, -bp(s, t));
      }
    }
  }
  if (with_scale) prob.AddFree(SdpProblem::kObjective, 0, 1.0);
  return sys;
}

ChoiCertificate ExtractCertificate(const HkmSystem& sys, const SdpSolution& sol,
                                   const LinearPencil& a, const LinearPencil& b) {
  ChoiCertificate cert;
  cert.k = sys.k;
  cert.l = sys.l;
  cert.variant = sys.variant;
  cert.provenance = Provenance::kSolver;
  cert.C = 0.5 * (sol.blocks.at(0) + sol.blocks.at(0).transpose());
  if (sys.variant != Variant::kExact) {
    const int count = sys.variant == Variant::kRelaxed ? 1 : sys.n + 1;
    for (int p = 0; p < count; ++p) {
      cert.slacks.push_back(b.mat(p).dense() - ChoiApply(cert, a.mat(p).dense()));
    }
  }
  return cert;
}

ContainmentVerdict CheckHkm(const LinearPencil& a, const LinearPencil& b,
                            Variant variant, const CriteriaOptions& opts) {
  if (a.n() != b.n()) throw DimensionError("CheckHkm: dimension mismatch");
  ContainmentVerdict v;
  v.method = MethodName(variant);
  v.seed = opts.seed;
  if (variant == Variant::kPositive) {
    const PositivePrecondition pre = CheckPositivePrecondition(a, b, opts);
    if (!pre.ok) throw UsageError("positive variant precondition fails: " + pre.reason);
    v.heuristic = pre.heuristic;
  }
  const HkmSystem sys = BuildHkmSystem(a, b, variant);
  const SdpSolution sol = SolveFeasibility(sys.problem, opts.sdp());
  v.iterations = sol.iterations;
  v.margins[v.method] = sol.margin;
  switch (sol.status) {
    case SdpStatus::kOptimal: {
      ChoiCertificate cert = ExtractCertificate(sys, sol, a, b);
      VerifyReport rep = Verify(cert, a, b, opts.cert_tol);
      v.verify = rep;
      if (rep.ok) {
        v.kind = VerdictKind::kContained;
        v.certificate = std::move(cert);
        v.cert_inner = a;
        v.cert_outer = b;
        v.reason = "criterion feasible, certificate verified";
      } else {
        v.reason = "criterion solved but certificate failed verification: " +
                   rep.message;
      }
      break;
    }
    case SdpStatus::kInfeasible:
      v.reason = "criterion infeasible (margin " + Fmt(sol.margin) + ")";
      break;
    default:
      v.numerical_failure = true;
      v.reason = "solver failure: " + sol.message;
      break;
  }
  return v;
}

int Dimension(const Body& body) {
  return std::visit([](const auto& b) { return b.n(); }, body);
}

namespace {

bool InVPolytope(const VPolytope& v, const Vector& x, double tol) {
  const int m = v.m();
  const int n = v.n();
  SdpProblem lp(ConeSpec{0, m, {}});
  for (int d = 0; d < n; ++d) {
    const int row = lp.AddConstraint(x(d));
    for (int i = 0; i < m; ++i) lp.AddNonneg(row, i, v.vertices(i, d));
  }
  const int sum = lp.AddConstraint(1.0);
  for (int i = 0; i < m; ++i) lp.AddNonneg(sum, i, 1.0);
  SdpOptions o;
  o.feas_tol = std::max(tol, 1e-10);
  SdpSolution sol = SolveFeasibility(lp, o);
  if (sol.status == SdpStatus::kOptimal) return true;
  if (sol.status == SdpStatus::kInfeasible) return false;
  throw NumericalFailure("V-polytope membership LP failed: " + sol.message);
}

}  // namespace

bool BodyContains(const Body& body, const Vector& x, double tol) {
  if (x.size() != Dimension(body)) throw DimensionError("BodyContains: point length mismatch");
  if (const auto* p = std::get_if<LinearPencil>(&body)) return p->ContainsPoint(x, tol);
  if (const auto* h = std::get_if<HPolyhedron>(&body)) return h->ContainsPoint(x, tol);
  return InVPolytope(std::get<VPolytope>(body), x, tol);
}

ContainmentVerdict CheckVertices(const VPolytope& v, const Body& outer,
                                 const CriteriaOptions& opts) {
  if (v.n() != Dimension(outer)) throw DimensionError("CheckVertices: dimension mismatch");
  ContainmentVerdict verdict;
  verdict.method = "vertices";
  verdict.seed = opts.seed;
  for (int i = 0; i < v.m(); ++i) {
    const Vector x = v.vertices.row(i).transpose();
    if (!BodyContains(outer, x, opts.feas_tol)) {
      verdict.kind = VerdictKind::kNotContained;
      verdict.witness = x;
      verdict.reason = "vertex " + std::to_string(i) + " lies outside";
      return verdict;
    }
  }
  verdict.kind = VerdictKind::kContained;
  verdict.exact_method = true;
  verdict.reason = "all " + std::to_string(v.m()) + " vertices inside";
  return verdict;
}

namespace {

// A point of S_A, preferably interior: the origin when A_0 is positive
// definite, otherwise a support maximizer.
std::optional<Vector> InnerPoint(const LinearPencil& a, const SdpOptions& o) {
  Eigen::LLT<Matrix> llt(a.mat(0).dense());
  if (llt.info() == Eigen::Success) return Vector::Zero(a.n());
  SupportResult r = Support(a, Vector::Zero(a.n()), o);
  if (r.kind == SupportResult::kFinite) return r.maximizer;
  return std::nullopt;
}

// Witness for a violated facet c + <nrm, x> >= 0 given the support result
// of w = -nrm over S_A.
std::optional<Vector> FacetWitness(const LinearPencil& a, double c,
                                   const Vector& nrm, const SupportResult& sr,
                                   const CriteriaOptions& opts) {
  const auto x0 = InnerPoint(a, opts.sdp());
  auto violates = [&](const Vector& x) {
    return a.ContainsPoint(x, opts.feas_tol) &&
           c + nrm.dot(x) < -opts.feas_tol * (1.0 + std::abs(c));
  };
  if (sr.kind == SupportResult::kUnbounded) {
    if (!x0) return std::nullopt;
    const Vector& d = sr.maximizer;
    const double gain = -nrm.dot(d);
    if (!(gain > 0.0)) return std::nullopt;
    const double r0 = -nrm.dot(*x0);
    for (double extra : {1.0, 10.0, 100.0}) {
      const double t = std::max(0.0, (c - r0 + extra) / gain);
      const Vector x = *x0 + t * d;
      if (violates(x)) return x;
    }
    return std::nullopt;
  }
  const Vector& xs = sr.maximizer;
  const double r = -nrm.dot(xs);
  if (x0) {
    const double r0 = -nrm.dot(*x0);
    if (r > r0) {
      // Step back toward the interior while keeping half of the violation.
      const double delta = std::min(1e-3, (r - c) / (2.0 * (r - r0)));
      const Vector x = *x0 + (1.0 - delta) * (xs - *x0);
      if (violates(x)) return x;
    }
  }
  if (violates(xs)) return xs;
  return std::nullopt;
}

}  // namespace

ContainmentVerdict CheckSInH(const LinearPencil& a, const HPolyhedron& q,
                             const CriteriaOptions& opts) {
  if (a.n() != q.n()) throw DimensionError("CheckSInH: dimension mismatch");
  ContainmentVerdict v;
  v.method = "facets";
  v.seed = opts.seed;
  const SdpOptions so = opts.sdp();
  std::vector<Matrix> duals;
  std::vector<double> values;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int f = 0; f < q.m(); ++f) {
    const Vector nrm = q.normals.row(f).transpose();
    const double c = q.offsets(f);
    SupportResult sr = Support(a, -nrm, so);
    v.iterations += sr.solution.iterations;
    if (sr.kind == SupportResult::kFailed) {
      v.numerical_failure = true;
      v.reason = "support solve failed for facet " + std::to_string(f) + ": " +
                 sr.solution.message;
      return v;
    }
    if (sr.kind == SupportResult::kEmpty) {
      v.kind = VerdictKind::kContained;
      v.exact_method = true;
      v.reason = "inner set is empty";
      return v;
    }
    const bool violated = sr.kind == SupportResult::kUnbounded ||
                          sr.value > c + opts.facet_tol * (1.0 + std::abs(c));
    if (sr.kind == SupportResult::kFinite) min_slack = std::min(min_slack, c - sr.value);
    if (violated) {
      v.margins["facets"] = sr.kind == SupportResult::kFinite
                                ? c - sr.value
                                : -std::numeric_limits<double>::infinity();
      auto w = FacetWitness(a, c, nrm, sr, opts);
      if (w) {
        v.kind = VerdictKind::kNotContained;
        v.witness = *w;
        v.reason = "facet " + std::to_string(f) + " violated (support " +
                   Fmt(sr.value) + " > offset " + Fmt(c) + ")";
      } else {
        v.numerical_failure = true;
        v.reason = "facet " + std::to_string(f) +
                   " violated but no witness re-checked";
      }
      return v;
    }
    duals.push_back(sr.dual);
    values.push_back(sr.value);
  }
  v.kind = VerdictKind::kContained;
  v.exact_method = true;
  v.margins["facets"] = min_slack;
  v.reason = "all " + std::to_string(q.m()) + " facet support values within offsets";

  // Certificate: C^q = Y^q + (c_q - r_q) Z0 with <A_0, Z0> = 1 and
  // <A_p, Z0> = 0, joined over the 1x1 blocks of the outer pencil.
  SdpProblem z(ConeSpec{0, 0, {a.k()}});
  for (int p = 1; p <= a.n(); ++p) {
    z.AddBlock(z.AddConstraint(0.0), 0, a.mat(p).dense());
  }
  z.AddBlock(z.AddConstraint(1.0), 0, a.mat(0).dense());
  SdpSolution zs = SolveFeasibility(z, so);
  if (zs.status != SdpStatus::kOptimal || q.m() == 0) return v;
  std::vector<ChoiCertificate> parts;
  for (int f = 0; f < q.m(); ++f) {
    ChoiCertificate part;
    part.k = a.k();
    part.l = 1;
    part.C = duals[f] + (q.offsets(f) - values[f]) * zs.blocks[0];
    part.C = 0.5 * (part.C + part.C.transpose());
    parts.push_back(std::move(part));
  }
  ChoiCertificate cert = JoinBlocks(parts);
  const LinearPencil outer = DiagonalPencil(q);
  VerifyReport rep = Verify(cert, a, outer, opts.cert_tol);
  if (rep.ok) {
    v.certificate = std::move(cert);
    v.verify = rep;
    v.cert_inner = a;
    v.cert_outer = outer;
  }
  return v;
}

ContainmentVerdict CheckHInH(const HPolyhedron& p, const HPolyhedron& q,
                             const CriteriaOptions& opts) {
  if (p.n() != q.n()) throw DimensionError("CheckHInH: dimension mismatch");
  if (!p.IsNormalForm() || !q.IsNormalForm()) {
    throw UsageError("CheckHInH: both polyhedra must be in normal form");
  }
  ContainmentVerdict v;
  v.method = "lp";
  v.seed = opts.seed;
  const int n = p.n();
  const int l = q.m();
  const LinearPencil inner = DiagonalPencil(p);
  const LinearPencil outer = DiagonalPencil(q);
  for (bool extended : {false, true}) {
    const int k = p.m() + (extended ? 1 : 0);
    const int shift = extended ? 1 : 0;
    SdpProblem lp(ConeSpec{0, l * k, {}});
    for (int i = 0; i < l; ++i) {
      const int sum = lp.AddConstraint(1.0);
      for (int j = 0; j < k; ++j) lp.AddNonneg(sum, i * k + j, 1.0);
      for (int d = 0; d < n; ++d) {
        const int row = lp.AddConstraint(q.normals(i, d));
        for (int j = shift; j < k; ++j) {
          lp.AddNonneg(row, i * k + j, p.normals(j - shift, d));
        }
      }
    }
    SdpSolution sol = SolveFeasibility(lp, opts.sdp());
    v.iterations += sol.iterations;
    v.margins[extended ? "lp-extended" : "lp"] = sol.margin;
    if (sol.status == SdpStatus::kNumericalFailure) {
      v.numerical_failure = true;
      v.reason = "LP solve failed: " + sol.message;
      return v;
    }
    if (sol.status != SdpStatus::kOptimal) continue;
    Matrix c(l, k);
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < k; ++j) c(i, j) = sol.nonneg(i * k + j);
    }
    ChoiCertificate cert = AnalyticHInH(c);
    const LinearPencil a = extended ? Extend(inner) : inner;
    VerifyReport rep = Verify(cert, a, outer, opts.cert_tol);
    v.kind = VerdictKind::kContained;
    v.exact_method = true;
    v.reason = std::string("row-stochastic matrix found") +
               (extended ? " (extended form)" : "");
    if (rep.ok) {
      v.certificate = std::move(cert);
      v.verify = rep;
      v.cert_inner = a;
      v.cert_outer = outer;
    }
    return v;
  }
  // Both LPs infeasible: the extended one is exact, so some facet of Q is
  // violated over P.
  ContainmentVerdict f = CheckSInH(inner, q, opts);
  f.method = "lp";
  f.margins.insert(v.margins.begin(), v.margins.end());
  f.iterations += v.iterations;
  if (f.kind == VerdictKind::kContained) {
    f.kind = VerdictKind::kInconclusive;
    f.certificate.reset();
    f.exact_method = false;
    f.numerical_failure = true;
    f.reason = "LP infeasible but every facet support is within tolerance";
  }
  return f;
}

std::optional<Vector> Falsify(const LinearPencil& a, const Body& outer,
                              const CriteriaOptions& opts) {
  const int n = a.n();
  if (n != Dimension(outer)) throw DimensionError("Falsify: dimension mismatch");
  Eigen::LLT<Matrix> llt(a.mat(0).dense());
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Matrix lower = llt.matrixL();
  auto try_point = [&](const Vector& x) {
    return a.ContainsPoint(x, opts.feas_tol) && !BodyContains(outer, x, opts.feas_tol);
  };
  if (try_point(Vector::Zero(n))) return Vector::Zero(n);

  auto try_direction = [&](const Vector& u) -> std::optional<Vector> {
    Matrix m = a.Direction(u).dense();
    Matrix w = lower.triangularView<Eigen::Lower>().solve(m);
    w = lower.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    const double lmin = MinEigenvalue(0.5 * (w + w.transpose()));
    if (lmin < -1e-14) {
      const double t = -1.0 / lmin;
      for (double f : {1.0 - 1e-9, 1.0 - 1e-6}) {
        const Vector x = f * t * u;
        if (try_point(x)) return x;
      }
    } else {
      for (double t : {1.0, 10.0, 1e2, 1e3, 1e4, 1e6}) {
        const Vector x = t * u;
        if (try_point(x)) return x;
      }
    }
    return std::nullopt;
  };

  for (int p = 0; p < n; ++p) {
    for (double s : {1.0, -1.0}) {
      Vector u = Vector::Zero(n);
      u(p) = s;
      if (auto x = try_direction(u)) return x;
    }
  }
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  for (int it = 0; it < opts.directions; ++it) {
    Vector u(n);
    for (int p = 0; p < n; ++p) u(p) = gauss(rng);
    const double nrm = u.norm();
    if (nrm == 0.0) continue;
    if (auto x = try_direction(u / nrm)) return x;
  }
  return std::nullopt;
}

namespace {

void Merge(ContainmentVerdict* into, const ContainmentVerdict& from) {
  for (const auto& [key, val] : from.margins) into->margins[key] = val;
  into->iterations += from.iterations;
}

// exact, then relaxed, then positive when its precondition holds, then
// falsification.
ContainmentVerdict HkmChain(const LinearPencil& a, const LinearPencil& b,
                            const Body& outer, const CriteriaOptions& opts) {
  ContainmentVerdict acc;
  acc.seed = opts.seed;
  std::vector<std::string> reasons;
  bool failure = false;
  for (Variant var : {Variant::kExact, Variant::kRelaxed, Variant::kPositive}) {
    if (var == Variant::kPositive) {
      const PositivePrecondition pre = CheckPositivePrecondition(a, b, opts);
      if (!pre.ok) {
        reasons.push_back("hkm-positive skipped: " + pre.reason);
        continue;
      }
    }
    ContainmentVerdict v = CheckHkm(a, b, var, opts);
    Merge(&acc, v);
    if (v.kind == VerdictKind::kContained) {
      v.margins = acc.margins;
      v.iterations = acc.iterations;
      return v;
    }
    failure = failure || v.numerical_failure;
    reasons.push_back(v.method + ": " + v.reason);
  }
  auto w = Falsify(a, outer, opts);
  std::string joined;
  for (const auto& r : reasons) joined += (joined.empty() ? "" : "; ") + r;
  if (w) {
    acc.kind = VerdictKind::kNotContained;
    acc.method = "sampling";
    acc.witness = *w;
    acc.reason = "boundary-ray witness found; " + joined;
    return acc;
  }
  acc.kind = VerdictKind::kInconclusive;
  acc.method = "hkm";
  acc.numerical_failure = failure;
  acc.reason = joined + "; no witness in " +
               std::to_string(2 * a.n() + opts.directions) + " directions";
  return acc;
}

ContainmentVerdict TranslateVerdict(ContainmentVerdict v, const Vector& shift) {
  if (v.witness) *v.witness += shift;
  return v;
}

bool Positive(const Vector& b) { return b.size() == 0 || b.minCoeff() > 0.0; }

// Vertex enumeration for small bounded polyhedra, including empty and flat
// ones. Boundedness depends only on the normals.
std::optional<ContainmentVerdict> SmallVertexDecision(const HPolyhedron& h, const Body& outer,
                                                      const CriteriaOptions& opts) {
  if (h.n() > 6 || h.m() > 40) return std::nullopt;
  const HPolyhedron cone(Vector::Ones(h.m()), h.normals);
  if (!IsBounded(DiagonalPencil(cone), opts.sdp())) return std::nullopt;
  const Matrix verts = EnumerateVertices(h);
  if (verts.rows() == 0) {
    ContainmentVerdict e;
    e.kind = VerdictKind::kContained;
    e.exact_method = true;
    e.method = "vertices";
    e.reason = "inner polyhedron is empty";
    return e;
  }
  return CheckVertices(VPolytope(verts), outer, opts);
}

ContainmentVerdict DecideH(const HPolyhedron& h, const Body& outer,
                           const CriteriaOptions& opts) {
  const SdpOptions so = opts.sdp();
  if (const auto* q = std::get_if<HPolyhedron>(&outer)) {
    if (Positive(h.offsets) && Positive(q->offsets)) {
      return CheckHInH(Normalize(h), Normalize(*q), opts);
    }
    // Translate both so that a deep interior point of h sits at the origin.
    CenteredPolyhedron cp;
    try {
      cp = CenterAndNormalize(h, so);
    } catch (const NotNormalizable&) {
      return CheckSInH(DiagonalPencil(h), *q, opts);
    }
    HPolyhedron qs(q->offsets + q->normals * cp.center, q->normals);
    if (Positive(qs.offsets)) {
      return TranslateVerdict(CheckHInH(cp.normalized, Normalize(qs), opts), cp.center);
    }
    return CheckSInH(DiagonalPencil(h), *q, opts);
  }

  LinearPencil inner;
  Vector center = Vector::Zero(h.n());
  if (Positive(h.offsets)) {
    inner = FromHPolyhedron(h);
  } else {
    try {
      CenteredPolyhedron cp = CenterAndNormalize(h, so);
      inner = cp.pencil;
      center = cp.center;
    } catch (const NotNormalizable& e) {
      if (auto v = SmallVertexDecision(h, outer, opts)) return *v;
      ContainmentVerdict out;
      out.reason = std::string(e.what()) + "; too large for vertex enumeration";
      return out;
    }
  }

  if (const auto* v = std::get_if<VPolytope>(&outer)) {
    if (!IsBounded(inner, so)) {
      ContainmentVerdict out;
      out.method = "vertices";
      for (int p = 0; p < h.n() && !out.witness; ++p) {
        for (double s : {1.0, -1.0}) {
          Vector w = Vector::Zero(h.n());
          w(p) = s;
          SupportResult r = Support(inner, w, so);
          if (r.kind != SupportResult::kUnbounded) continue;
          for (double t : {1e2, 1e4, 1e6, 1e8}) {
            Vector x = center + t * r.maximizer;
            if (h.ContainsPoint(x) && !BodyContains(*v, x)) {
              out.kind = VerdictKind::kNotContained;
              out.witness = x;
              out.reason = "inner polyhedron is unbounded";
              return out;
            }
          }
        }
      }
      out.numerical_failure = true;
      out.reason = "inner polyhedron is unbounded but no witness re-checked";
      return out;
    }
    Matrix verts = EnumerateVertices(h);
    if (verts.rows() == 0) {
      ContainmentVerdict out;
      out.kind = VerdictKind::kContained;
      out.exact_method = true;
      out.method = "vertices";
      out.reason = "inner polyhedron is empty";
      return out;
    }
    return CheckVertices(VPolytope(verts), outer, opts);
  }

  const LinearPencil& b_orig = std::get<LinearPencil>(outer);
  const LinearPencil b = Translate(b_orig, -center);
  ContainmentVerdict v = HkmChain(inner, b, Body(b), opts);
  v = TranslateVerdict(std::move(v), center);
  if (v.kind != VerdictKind::kInconclusive) return v;
  // Exact fallback for small bounded polytopes: vertex enumeration.
  if (auto e = SmallVertexDecision(h, outer, opts)) {
    Merge(&*e, v);
    e->reason += " (after: " + v.reason + ")";
    return *e;
  }
  return v;
}

}  // namespace

ContainmentVerdict DecideAuto(const Body& inner, const Body& outer,
                              const CriteriaOptions& opts) {
  if (Dimension(inner) != Dimension(outer)) {
    throw DimensionError("DecideAuto: inner has n = " + std::to_string(Dimension(inner)) +
                         ", outer has n = " + std::to_string(Dimension(outer)));
  }
  ContainmentVerdict v;
  if (const auto* vp = std::get_if<VPolytope>(&inner)) {
    v = CheckVertices(*vp, outer, opts);
  } else if (const auto* h = std::get_if<HPolyhedron>(&inner)) {
    v = DecideH(*h, outer, opts);
  } else {
    const LinearPencil& a = std::get<LinearPencil>(inner);
    if (const auto* q = std::get_if<HPolyhedron>(&outer)) {
      v = CheckSInH(a, *q, opts);
    } else if (std::holds_alternative<VPolytope>(outer)) {
      auto w = Falsify(a, outer, opts);
      v.method = "sampling";
      if (w) {
        v.kind = VerdictKind::kNotContained;
        v.witness = *w;
        v.reason = "boundary-ray witness found";
      } else {
        v.reason = "spectrahedron in V-polytope is not decided; no witness in " +
                   std::to_string(2 * a.n() + opts.directions) + " directions";
      }
    } else {
      const LinearPencil& b = std::get<LinearPencil>(outer);
      v = HkmChain(a, b, outer, opts);
      if (v.kind == VerdictKind::kInconclusive && AsEllipsoid(a) && AsEllipsoid(b)) {
        v.reason += "; exact criterion for ellipsoids was infeasible";
      }
    }
  }
  v.seed = opts.seed;
  return v;
}

bool AuditVerdict(const ContainmentVerdict& v, const Body& inner,
                  const Body& outer, std::string* why, double tol) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  switch (v.kind) {
    case VerdictKind::kContained: {
      if (!v.certificate) {
        return v.exact_method ? true : fail("contained without certificate or exact method");
      }
      std::optional<LinearPencil> a = v.cert_inner;
      std::optional<LinearPencil> b = v.cert_outer;
      if (!a) {
        if (const auto* p = std::get_if<LinearPencil>(&inner)) a = *p;
      }
      if (!b) {
        if (const auto* p = std::get_if<LinearPencil>(&outer)) b = *p;
      }
      if (!a || !b) return fail("certificate pencils unknown");
      VerifyReport rep = Verify(*v.certificate, *a, *b, tol);
      return rep.ok ? true : fail("certificate does not verify: " + rep.message);
    }
    case VerdictKind::kNotContained: {
      if (!v.witness) return fail("not contained without witness");
      if (!BodyContains(inner, *v.witness)) return fail("witness is not in the inner set");
      if (BodyContains(outer, *v.witness)) return fail("witness lies in the outer set");
      return true;
    }
    case VerdictKind::kInconclusive:
      return true;
  }
  return true;
}

}  // namespace contain
