#include "contain/pencil.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/LU>

#include "contain/errors.h"

namespace contain {

LinearPencil::LinearPencil(std::vector<SymMatrix> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw DimensionError("LinearPencil: needs at least A_0");
  const int k = mats_[0].dim();
  for (size_t p = 1; p < mats_.size(); ++p) {
    if (mats_[p].dim() != k) {
      throw DimensionError("LinearPencil: A_" + std::to_string(p) + " is " +
                           std::to_string(mats_[p].dim()) + "x" +
                           std::to_string(mats_[p].dim()) + ", expected " +
                           std::to_string(k));
    }
  }
}

bool LinearPencil::IsMonic() const {
  return !mats_.empty() &&
         mats_[0].dense() == Matrix::Identity(k(), k());
}

SymMatrix LinearPencil::Direction(const Vector& u) const {
  if (u.size() != n()) {
    throw DimensionError("LinearPencil: point has length " +
                         std::to_string(u.size()) + ", expected " +
                         std::to_string(n()));
  }
  Matrix m = Matrix::Zero(k(), k());
  for (int p = 0; p < n(); ++p) m += u(p) * mats_[p + 1].dense();
  return SymMatrix(std::move(m));
}

SymMatrix LinearPencil::Evaluate(const Vector& x) const {
  return mats_[0] + Direction(x);
}

bool LinearPencil::ContainsPoint(const Vector& x, double tol) const {
  return IsPsd(Evaluate(x), tol).psd;
}

HPolyhedron::HPolyhedron(Vector b, Matrix a)
    : offsets(std::move(b)), normals(std::move(a)) {
  if (offsets.size() != normals.rows()) {
    throw DimensionError("HPolyhedron: " + std::to_string(offsets.size()) +
                         " offsets for " + std::to_string(normals.rows()) +
                         " normal rows");
  }
}

bool HPolyhedron::ContainsPoint(const Vector& x, double tol) const {
  if (x.size() != n()) throw DimensionError("HPolyhedron: point length mismatch");
  if (m() == 0) return true;
  Vector v = offsets + normals * x;
  return v.minCoeff() >= -tol * (1.0 + v.cwiseAbs().maxCoeff());
}

bool HPolyhedron::IsNormalForm() const {
  return (offsets.array() == 1.0).all();
}

VPolytope::VPolytope(Matrix v) : vertices(std::move(v)) {
  if (vertices.rows() < 1) throw DimensionError("VPolytope: needs a vertex");
}

LinearPencil Translate(const LinearPencil& p, const Vector& v) {
  std::vector<SymMatrix> mats = p.mats();
  mats[0] = p.mat(0) - p.Direction(v);
  return LinearPencil(std::move(mats));
}

LinearPencil Scale(const LinearPencil& p, double nu) {
  if (!(nu > 0.0)) throw UsageError("Scale: nu must be positive");
  if (!p.IsMonic()) throw UsageError("Scale: pencil is not monic");
  std::vector<SymMatrix> mats = p.mats();
  for (size_t q = 1; q < mats.size(); ++q) mats[q] = mats[q] * (1.0 / nu);
  return LinearPencil(std::move(mats));
}

LinearPencil Extend(const LinearPencil& p) {
  const int k = p.k();
  std::vector<SymMatrix> mats;
  for (int q = 0; q <= p.n(); ++q) {
    Matrix m = Matrix::Zero(k + 1, k + 1);
    m.bottomRightCorner(k, k) = p.mat(q).dense();
    if (q == 0) m(0, 0) = 1.0;
    mats.emplace_back(std::move(m));
  }
  return LinearPencil(std::move(mats));
}

LinearPencil DirectSum(const std::vector<LinearPencil>& ps) {
  if (ps.empty()) throw DimensionError("DirectSum: empty list");
  const int n = ps[0].n();
  int total = 0;
  for (const auto& p : ps) {
    if (p.n() != n) throw DimensionError("DirectSum: ambient dimensions differ");
    total += p.k();
  }
  std::vector<SymMatrix> mats;
  for (int q = 0; q <= n; ++q) {
    Matrix m = Matrix::Zero(total, total);
    int off = 0;
    for (const auto& p : ps) {
      m.block(off, off, p.k(), p.k()) = p.mat(q).dense();
      off += p.k();
    }
    mats.emplace_back(std::move(m));
  }
  return LinearPencil(std::move(mats));
}

LinearPencil DiagonalPencil(const HPolyhedron& h) {
  if (h.m() == 0) throw DimensionError("DiagonalPencil: no inequalities");
  std::vector<SymMatrix> mats;
  mats.push_back(SymMatrix::Diagonal(h.offsets));
  for (int p = 0; p < h.n(); ++p) {
    mats.push_back(SymMatrix::Diagonal(h.normals.col(p)));
  }
  return LinearPencil(std::move(mats));
}

HPolyhedron Normalize(const HPolyhedron& h) {
  HPolyhedron out = h;
  for (int i = 0; i < h.m(); ++i) {
    if (!(h.offsets(i) > 0.0)) {
      throw NotNormalizable("inequality " + std::to_string(i) +
                            " has offset " + std::to_string(h.offsets(i)) +
                            "; the origin is not interior");
    }
    out.normals.row(i) /= h.offsets(i);
    out.offsets(i) = 1.0;
  }
  return out;
}

LinearPencil FromHPolyhedron(const HPolyhedron& h) {
  return DiagonalPencil(Normalize(h));
}

CenteredPolyhedron CenterAndNormalize(const HPolyhedron& h,
                                      const SdpOptions& options) {
  const int n = h.n();
  const int m = h.m();
  // Variables: free (x, rho), nonneg (slacks, cap slack).
  SdpProblem lp(ConeSpec{n + 1, m + 1, {}});
  for (int i = 0; i < m; ++i) {
    const int row = lp.AddConstraint(-h.offsets(i));
    for (int j = 0; j < n; ++j) lp.AddFree(row, j, h.normals(i, j));
    lp.AddFree(row, n, -h.normals.row(i).norm());
    lp.AddNonneg(row, i, -1.0);
  }
  const int cap = lp.AddConstraint(1.0);
  lp.AddFree(cap, n, 1.0);
  lp.AddNonneg(cap, m, 1.0);
  lp.AddFree(SdpProblem::kObjective, n, 1.0);
  SdpSolution sol = Solve(lp, options);
  if (sol.status == SdpStatus::kInfeasible) {
    throw NotNormalizable("polyhedron is empty");
  }
  if (sol.status != SdpStatus::kOptimal) {
    throw NumericalFailure("CenterAndNormalize: " + sol.message);
  }
  CenteredPolyhedron out;
  out.center = sol.free.head(n);
  out.radius = sol.free(n);
  if (out.radius <= 1e-9) {
    throw NotNormalizable("polyhedron has empty interior");
  }
  HPolyhedron shifted(h.offsets + h.normals * out.center, h.normals);
  out.normalized = Normalize(shifted);
  out.pencil = DiagonalPencil(out.normalized);
  return out;
}

LinearPencil EllipsoidPencil(const Vector& semi_axes) {
  const int n = static_cast<int>(semi_axes.size());
  if (n < 1) throw DimensionError("EllipsoidPencil: empty semi-axes");
  std::vector<SymMatrix> mats;
  mats.push_back(SymMatrix::Identity(n + 1));
  for (int p = 0; p < n; ++p) {
    if (!(semi_axes(p) > 0.0)) {
      throw UsageError("EllipsoidPencil: semi-axes must be positive");
    }
    mats.push_back(SymMatrix::Unit(n + 1, p, n) * (1.0 / semi_axes(p)));
  }
  return LinearPencil(std::move(mats));
}

LinearPencil BallPencil(int n, double r) {
  return EllipsoidPencil(Vector::Constant(n, r));
}

LinearPencil CubePencil(int n, double r) {
  if (n < 1 || !(r > 0.0)) throw UsageError("CubePencil: need n >= 1, r > 0");
  std::vector<SymMatrix> mats;
  mats.push_back(SymMatrix::Identity(2 * n));
  for (int p = 0; p < n; ++p) {
    Vector d = Vector::Zero(2 * n);
    d(p) = 1.0 / r;
    d(n + p) = -1.0 / r;
    mats.push_back(SymMatrix::Diagonal(d));
  }
  return LinearPencil(std::move(mats));
}

std::optional<HPolyhedron> AsHPolyhedron(const LinearPencil& p) {
  const int k = p.k();
  for (const auto& m : p.mats()) {
    Matrix off = m.dense();
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
  }
  Matrix normals(k, p.n());
  for (int q = 0; q < p.n(); ++q) normals.col(q) = p.mat(q + 1).dense().diagonal();
  return HPolyhedron(p.mat(0).dense().diagonal(), normals);
}

std::optional<Vector> AsEllipsoid(const LinearPencil& p) {
  const int n = p.n();
  if (p.k() != n + 1 || !p.IsMonic()) return std::nullopt;
  Vector axes(n);
  for (int q = 0; q < n; ++q) {
    const Matrix& m = p.mat(q + 1).dense();
    const double c = m(q, n);
    if (!(c > 0.0)) return std::nullopt;
    Matrix rest = m;
    rest(q, n) = 0.0;
    rest(n, q) = 0.0;
    if (rest.cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
    axes(q) = 1.0 / c;
  }
  return axes;
}

double BoundaryRay(const LinearPencil& p, const Vector& u) {
  if (!p.IsMonic()) throw UsageError("BoundaryRay: pencil is not monic");
  SymMatrix m = p.Direction(u);
  const double lmin = MinEigenvalue(m.dense());
  const double scale = std::max(1.0, m.MaxAbs());
  if (lmin >= -1e-14 * scale) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

SupportResult Support(const LinearPencil& p, const Vector& w,
                      const SdpOptions& options) {
  if (w.size() != p.n()) throw DimensionError("Support: direction length mismatch");
  // Dual form: maximize <-A_0, Y> s.t. <A_q, Y> = -w_q, Y >= 0. Its dual
  // multipliers are the maximizing point x.
  SdpProblem prob(ConeSpec{0, 0, {p.k()}});
  for (int q = 0; q < p.n(); ++q) {
    const int row = prob.AddConstraint(-w(q));
    prob.AddBlock(row, 0, p.mat(q + 1).dense());
  }
  prob.AddBlock(SdpProblem::kObjective, 0, -p.mat(0).dense());
  SupportResult r;
  r.solution = Solve(prob, options);
  switch (r.solution.status) {
    case SdpStatus::kOptimal:
      r.maximizer = r.solution.dual;
      r.dual = r.solution.blocks[0];
      r.value = -r.solution.objective;
      if (r.maximizer.size() > 0 &&
          r.maximizer.cwiseAbs().maxCoeff() > kBoundedCap) {
        r.kind = SupportResult::kUnbounded;
        r.value = std::numeric_limits<double>::infinity();
      } else {
        r.kind = SupportResult::kFinite;
      }
      break;
    case SdpStatus::kInfeasible:
      r.kind = SupportResult::kUnbounded;
      r.value = std::numeric_limits<double>::infinity();
      r.maximizer = r.solution.farkas_ray;
      break;
    case SdpStatus::kUnbounded:
      r.kind = SupportResult::kEmpty;
      break;
    case SdpStatus::kNumericalFailure:
      r.kind = SupportResult::kFailed;
      break;
  }
  return r;
}

double InteriorMargin(const LinearPencil& p, const SdpOptions& options) {
  SdpProblem prob(ConeSpec{0, 0, {p.k()}});
  for (int q = 0; q < p.n(); ++q) {
    const int row = prob.AddConstraint(0.0);
    prob.AddBlock(row, 0, p.mat(q + 1).dense());
  }
  const int tr = prob.AddConstraint(1.0);
  prob.AddBlock(tr, 0, Matrix::Identity(p.k(), p.k()));
  prob.AddBlock(SdpProblem::kObjective, 0, -p.mat(0).dense());
  SdpSolution sol = Solve(prob, options);
  switch (sol.status) {
    case SdpStatus::kOptimal:
      return -sol.objective;
    case SdpStatus::kInfeasible:
      return std::numeric_limits<double>::infinity();
    default:
      throw NumericalFailure("InteriorMargin: " + std::string(ToString(sol.status)) +
                             (sol.message.empty() ? "" : ": " + sol.message));
  }
}

bool IsBounded(const LinearPencil& p, const SdpOptions& options) {
  if (!p.IsMonic() && InteriorMargin(p, options) < -options.feas_tol) {
    throw EmptySpectrahedron("IsBounded: spectrahedron is empty");
  }
  for (int q = 0; q < p.n(); ++q) {
    for (double sign : {1.0, -1.0}) {
      Vector w = Vector::Zero(p.n());
      w(q) = sign;
      SupportResult r = Support(p, w, options);
      switch (r.kind) {
        case SupportResult::kFinite:
          break;
        case SupportResult::kUnbounded:
          return false;
        case SupportResult::kEmpty:
          throw EmptySpectrahedron("IsBounded: spectrahedron is empty");
        case SupportResult::kFailed:
          throw NumericalFailure("IsBounded: support solve failed: " +
                                 r.solution.message);
      }
    }
  }
  return true;
}

namespace {

void EnumerateSubsets(int m, int n, int start, std::vector<int>* current,
                      const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(current->size()) == n) {
    fn(*current);
    return;
  }
  for (int i = start; i <= m - (n - static_cast<int>(current->size())); ++i) {
    current->push_back(i);
    EnumerateSubsets(m, n, i + 1, current, fn);
    current->pop_back();
  }
}

}  // namespace

Matrix EnumerateVertices(const HPolyhedron& h, double tol) {
  const int n = h.n();
  const int m = h.m();
  std::vector<Vector> found;
  std::vector<int> current;
  EnumerateSubsets(m, n, 0, &current, [&](const std::vector<int>& rows) {
    Matrix a(n, n);
    Vector b(n);
    for (int r = 0; r < n; ++r) {
      a.row(r) = h.normals.row(rows[r]);
      b(r) = -h.offsets(rows[r]);
    }
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < n) return;
    Vector x = lu.solve(b);
    if (!x.allFinite() || !h.ContainsPoint(x, tol)) return;
    for (const auto& v : found) {
      if ((v - x).cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + x.cwiseAbs().maxCoeff())) {
        return;
      }
    }
    found.push_back(x);
  });
  Matrix out(found.size(), n);
  for (size_t i = 0; i < found.size(); ++i) out.row(i) = found[i];
  return out;
}

}  // namespace contain
