#include "contain/sdp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "contain/errors.h"

namespace contain {

// ---------------------------------------------------------------------------
// SdpProblem

SdpProblem::SdpProblem(ConeSpec cone) : cone_(std::move(cone)) {
  if (cone_.free < 0 || cone_.nonneg < 0) {
    throw DimensionError("SdpProblem: negative cone dimension");
  }
  int off = cone_.free + cone_.nonneg;
  for (int k : cone_.psd) {
    if (k < 1) throw DimensionError("SdpProblem: PSD block size must be >= 1");
    block_offset_.push_back(off);
    off += SvecSize(k);
  }
  num_vars_ = off;
}

int SdpProblem::AddConstraint(double rhs) {
  rhs_.push_back(rhs);
  rows_.emplace_back();
  return static_cast<int>(rhs_.size()) - 1;
}

void SdpProblem::SetRhs(int row, double rhs) {
  if (row < 0 || row >= num_constraints()) {
    throw DimensionError("SdpProblem: row out of range");
  }
  rhs_[row] = rhs;
}

void SdpProblem::AddCoef(int row, int index, double coef) {
  if (coef == 0.0) return;
  if (row == kObjective) {
    objective_.emplace_back(index, coef);
    return;
  }
  if (row < 0 || row >= num_constraints()) {
    throw DimensionError("SdpProblem: row out of range");
  }
  rows_[row].emplace_back(index, coef);
}

void SdpProblem::AddFree(int row, int index, double coef) {
  if (index < 0 || index >= cone_.free) {
    throw DimensionError("SdpProblem: free index out of range");
  }
  AddCoef(row, index, coef);
}

void SdpProblem::AddNonneg(int row, int index, double coef) {
  if (index < 0 || index >= cone_.nonneg) {
    throw DimensionError("SdpProblem: nonneg index out of range");
  }
  AddCoef(row, cone_.free + index, coef);
}

int SdpProblem::BlockOffset(int block) const {
  if (block < 0 || block >= static_cast<int>(cone_.psd.size())) {
    throw DimensionError("SdpProblem: block index out of range");
  }
  return block_offset_[block];
}

int SdpProblem::SvecIndex(int block, int i, int j) const {
  const int k = cone_.psd.at(block);
  if (i < 0 || j < 0 || i >= k || j >= k) {
    throw DimensionError("SdpProblem: entry index out of range");
  }
  if (i < j) std::swap(i, j);
  return BlockOffset(block) + j * k - j * (j - 1) / 2 + (i - j);
}

void SdpProblem::AddEntry(int row, int block, int i, int j, double coef) {
  const int idx = SvecIndex(block, i, j);
  AddCoef(row, idx, i == j ? coef : coef * M_SQRT1_2);
}

void SdpProblem::AddBlock(int row, int block, const Matrix& f) {
  const int k = cone_.psd.at(block);
  if (f.rows() != k || f.cols() != k) {
    throw DimensionError("SdpProblem: block coefficient has wrong size");
  }
  for (int j = 0; j < k; ++j) {
    AddCoef(row, SvecIndex(block, j, j), f(j, j));
    for (int i = j + 1; i < k; ++i) {
      AddCoef(row, SvecIndex(block, i, j), (f(i, j) + f(j, i)) * M_SQRT1_2);
    }
  }
}

void SdpProblem::AddVectorCoef(int row, int index, double coef) {
  if (index < 0 || index >= num_vars_) {
    throw DimensionError("SdpProblem: vector index out of range");
  }
  AddCoef(row, index, coef);
}

Matrix SdpProblem::ConstraintMatrix() const {
  Matrix a = Matrix::Zero(num_constraints(), num_vars_);
  for (int r = 0; r < num_constraints(); ++r) {
    for (const auto& [idx, v] : rows_[r]) a(r, idx) += v;
  }
  return a;
}

Vector SdpProblem::Rhs() const {
  return Eigen::Map<const Vector>(rhs_.data(),
                                  static_cast<Eigen::Index>(rhs_.size()));
}

Vector SdpProblem::Objective() const {
  Vector c = Vector::Zero(num_vars_);
  for (const auto& [idx, v] : objective_) c(idx) += v;
  return c;
}

const char* ToString(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal:
      return "optimal";
    case SdpStatus::kInfeasible:
      return "infeasible";
    case SdpStatus::kUnbounded:
      return "unbounded";
    case SdpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Interior-point internals

namespace {

constexpr double kStepFraction = 0.99;

// Internal variable layout: [free+ | free- | nonneg | svec blocks]. Free
// variables are split into two nonnegative halves.
struct Layout {
  int nf = 0;
  int nl = 0;
  int nlp = 0;
  std::vector<int> psd;
  std::vector<int> off;
  int n = 0;
  int degree = 0;
};

Layout MakeLayout(const ConeSpec& cone) {
  Layout l;
  l.nf = cone.free;
  l.nl = cone.nonneg;
  l.nlp = 2 * cone.free + cone.nonneg;
  l.psd = cone.psd;
  int off = l.nlp;
  l.degree = l.nlp;
  for (int k : cone.psd) {
    l.off.push_back(off);
    off += SvecSize(k);
    l.degree += k;
  }
  l.n = off;
  return l;
}

// Maps a user-coordinate matrix (columns = user variables) to internal
// coordinates by duplicating and negating free columns.
Matrix ToInternalColumns(const Matrix& a, const Layout& l) {
  Matrix out(a.rows(), l.n);
  const int nf = l.nf;
  out.leftCols(nf) = a.leftCols(nf);
  out.middleCols(nf, nf) = -a.leftCols(nf);
  out.rightCols(l.n - 2 * nf) = a.rightCols(a.cols() - nf);
  return out;
}

Vector ToInternal(const Vector& v, const Layout& l) {
  Vector out(l.n);
  const int nf = l.nf;
  out.head(nf) = v.head(nf);
  out.segment(nf, nf) = -v.head(nf);
  out.tail(l.n - 2 * nf) = v.tail(v.size() - nf);
  return out;
}

Vector ToUser(const Vector& x, const Layout& l) {
  const int nf = l.nf;
  Vector out(x.size() - nf);
  out.head(nf) = x.head(nf) - x.segment(nf, nf);
  out.tail(out.size() - nf) = x.tail(x.size() - 2 * nf);
  return out;
}

Vector ConeIdentity(const Layout& l) {
  Vector e = Vector::Zero(l.n);
  e.head(l.nlp).setOnes();
  for (size_t b = 0; b < l.psd.size(); ++b) {
    e.segment(l.off[b], SvecSize(l.psd[b])) =
        Svec(Matrix::Identity(l.psd[b], l.psd[b]));
  }
  return e;
}

// Largest alpha with v + alpha * dv in the cone (infinity if unrestricted).
double ConeStep(const Layout& l, const Vector& v, const Vector& dv) {
  double alpha = std::numeric_limits<double>::infinity();
  for (int i = 0; i < l.nlp; ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  for (size_t b = 0; b < l.psd.size(); ++b) {
    const int k = l.psd[b];
    const int sz = SvecSize(k);
    Matrix x = Smat(v.segment(l.off[b], sz), k);
    Matrix dx = Smat(dv.segment(l.off[b], sz), k);
    Eigen::LLT<Matrix> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    Matrix lower = llt.matrixL();
    Matrix tmp = lower.triangularView<Eigen::Lower>().solve(dx);
    Matrix m = lower.triangularView<Eigen::Lower>()
                   .solve(tmp.transpose())
                   .transpose();
    const double lmin = MinEigenvalue(0.5 * (m + m.transpose()));
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

// Nesterov-Todd scaling: for every PSD block, G with
//   G^{-1} X G^{-T} = G^T S G = diag(d),  W = G G^T,  W S W = X.
struct Scaling {
  Vector g;    // LP: sqrt(x / s)
  Vector lam;  // LP: sqrt(x * s)
  std::vector<Matrix> G;
  std::vector<Matrix> Ginv;
  std::vector<Matrix> W;
  std::vector<Vector> d;
};

bool ComputeScaling(const Layout& l, const Vector& x, const Vector& s,
                    Scaling* sc) {
  sc->g = (x.head(l.nlp).array() / s.head(l.nlp).array()).sqrt();
  sc->lam = (x.head(l.nlp).array() * s.head(l.nlp).array()).sqrt();
  sc->G.clear();
  sc->Ginv.clear();
  sc->W.clear();
  sc->d.clear();
  for (size_t b = 0; b < l.psd.size(); ++b) {
    const int k = l.psd[b];
    const int sz = SvecSize(k);
    Matrix xm = Smat(x.segment(l.off[b], sz), k);
    Matrix sm = Smat(s.segment(l.off[b], sz), k);
    Eigen::LLT<Matrix> llt(xm);
    if (llt.info() != Eigen::Success) return false;
    Matrix lx = llt.matrixL();
    Matrix lsl = lx.transpose() * sm * lx;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (lsl + lsl.transpose()));
    if (es.info() != Eigen::Success) return false;
    Vector e2 = es.eigenvalues();
    if (e2.minCoeff() <= 0.0 || !std::isfinite(e2.maxCoeff())) return false;
    Vector dd = e2.array().sqrt();
    Vector inv_sqrt_d = dd.array().rsqrt();
    Vector sqrt_d = dd.array().sqrt();
    Matrix g = lx * es.eigenvectors() * inv_sqrt_d.asDiagonal();
    Matrix ginv = sqrt_d.asDiagonal() * es.eigenvectors().transpose() *
                  lx.triangularView<Eigen::Lower>().solve(
                      Matrix::Identity(k, k));
    sc->W.push_back(g * g.transpose());
    sc->G.push_back(std::move(g));
    sc->Ginv.push_back(std::move(ginv));
    sc->d.push_back(std::move(dd));
  }
  return true;
}

// H(v): LP part g^2 .* v, PSD part svec(W smat(v) W).
Vector ApplyH(const Layout& l, const Scaling& sc, const Vector& v) {
  Vector out(l.n);
  out.head(l.nlp) = sc.g.array().square() * v.head(l.nlp).array();
  for (size_t b = 0; b < l.psd.size(); ++b) {
    const int k = l.psd[b];
    const int sz = SvecSize(k);
    Matrix m = Smat(v.segment(l.off[b], sz), k);
    out.segment(l.off[b], sz) = Svec(sc.W[b] * m * sc.W[b]);
  }
  return out;
}

// Scaled complementarity right-hand side: LP entries and one matrix per
// PSD block, all expressed in the NT-scaled coordinates.
struct ComplRhs {
  Vector lp;
  std::vector<Matrix> psd;
};

struct Direction {
  Vector dx;
  Vector ds;
  Vector dy;
  double dtau = 0.0;
  double dkappa = 0.0;
};

class NewtonSolver {
 public:
  NewtonSolver(const Layout& l, const Matrix& a, const Vector& b,
               const Vector& c, const Scaling& sc, double tau, double kappa)
      : l_(l), a_(a), b_(b), c_(c), sc_(sc), tau_(tau), kappa_(kappa) {}

  bool Factor() {
    const int m = static_cast<int>(a_.rows());
    hat_.resize(l_.n, m);
    for (int i = 0; i < m; ++i) {
      hat_.col(i) = ApplyH(l_, sc_, a_.row(i).transpose());
    }
    Matrix mm = a_ * hat_;
    mm = 0.5 * (mm + mm.transpose());
    hc_ = ApplyH(l_, sc_, c_);
    ahc_ = a_ * hc_;
    chc_ = c_.dot(hc_);
    double reg = 0.0;
    const double diag_scale =
        m > 0 ? std::max(1e-300, mm.diagonal().cwiseAbs().maxCoeff()) : 1.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
      Matrix mr = mm;
      if (reg > 0.0) mr.diagonal().array() += reg;
      chol_.compute(mr);
      if (chol_.info() == Eigen::Success) {
        v_ = chol_.solve(ahc_ + b_);
        if (v_.allFinite()) return true;
      }
      reg = (reg == 0.0) ? 1e-14 * diag_scale : reg * 100.0;
    }
    return false;
  }

  Direction Solve(const Vector& r1, const Vector& r2, double r3,
                  const ComplRhs& rc, double r5) const {
    Vector r4(l_.n);
    r4.head(l_.nlp) = sc_.g.array() * rc.lp.array() / sc_.lam.array();
    for (size_t b = 0; b < l_.psd.size(); ++b) {
      const int k = l_.psd[b];
      const Vector& d = sc_.d[b];
      Matrix u(k, k);
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) u(i, j) = 2.0 * rc.psd[b](i, j) / (d(i) + d(j));
      }
      r4.segment(l_.off[b], SvecSize(k)) =
          Svec(sc_.G[b] * u * sc_.G[b].transpose());
    }
    Vector t = r4 - ApplyH(l_, sc_, r2);
    Vector u = chol_.solve(r1 - a_ * t);
    Vector q = ahc_ - b_;
    const double rhs3 = r3 - c_.dot(t) - r5 / tau_;
    const double denom = q.dot(v_) - chc_ - kappa_ / tau_;
    Direction dir;
    dir.dtau = (rhs3 - q.dot(u)) / denom;
    dir.dy = u + v_ * dir.dtau;
    dir.ds = r2 - a_.transpose() * dir.dy + c_ * dir.dtau;
    dir.dx = t + hat_ * dir.dy - hc_ * dir.dtau;
    dir.dkappa = (r5 - kappa_ * dir.dtau) / tau_;
    return dir;
  }

 private:
  const Layout& l_;
  const Matrix& a_;
  const Vector& b_;
  const Vector& c_;
  const Scaling& sc_;
  double tau_;
  double kappa_;
  Matrix hat_;  // H A^T
  Vector hc_;
  Vector ahc_;
  double chc_ = 0.0;
  Vector v_;
  Eigen::LLT<Matrix> chol_;
};

// Scaled directions dx~ = G^{-1} dX G^{-T}, ds~ = G^T dS G and their Jordan
// product, used by the Mehrotra corrector.
ComplRhs SecondOrderTerm(const Layout& l, const Scaling& sc,
                         const Direction& dir) {
  ComplRhs out;
  out.lp = (dir.dx.head(l.nlp).array() / sc.g.array()) *
           (dir.ds.head(l.nlp).array() * sc.g.array());
  for (size_t b = 0; b < l.psd.size(); ++b) {
    const int k = l.psd[b];
    const int sz = SvecSize(k);
    Matrix dx = Smat(dir.dx.segment(l.off[b], sz), k);
    Matrix ds = Smat(dir.ds.segment(l.off[b], sz), k);
    Matrix dxs = sc.Ginv[b] * dx * sc.Ginv[b].transpose();
    Matrix dss = sc.G[b].transpose() * ds * sc.G[b];
    out.psd.push_back(0.5 * (dxs * dss + dss * dxs));
  }
  return out;
}

struct Preprocessed {
  Matrix a;            // normalized, independent rows (user coordinates)
  Vector b;
  std::vector<int> kept;  // original row index for each kept row
  Vector row_scale;       // original row norm for each kept row
  bool infeasible = false;
  Vector ray;  // user-space Farkas ray when infeasible
};

Preprocessed Preprocess(const Matrix& a, const Vector& g, double tol) {
  Preprocessed pp;
  const int m = static_cast<int>(a.rows());
  std::vector<int> nonzero;
  Vector norms = a.rowwise().norm();
  const double max_norm = m > 0 ? norms.maxCoeff() : 0.0;
  for (int i = 0; i < m; ++i) {
    if (norms(i) > 1e-14 * std::max(1.0, max_norm)) {
      nonzero.push_back(i);
    } else if (std::abs(g(i)) > tol) {
      pp.infeasible = true;
      pp.ray = Vector::Zero(m);
      pp.ray(i) = -1.0 / g(i);
      return pp;
    }
  }
  const int mz = static_cast<int>(nonzero.size());
  Matrix an(mz, a.cols());
  Vector bn(mz);
  Vector scale(mz);
  for (int r = 0; r < mz; ++r) {
    scale(r) = norms(nonzero[r]);
    an.row(r) = a.row(nonzero[r]) / scale(r);
    bn(r) = g(nonzero[r]) / scale(r);
  }
  if (mz == 0) {
    pp.a = an;
    pp.b = bn;
    pp.row_scale = scale;
    return pp;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(an.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  if (rank < mz) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(an);
    Vector xls = cod.solve(bn);
    Vector res = bn - an * xls;
    if (res.norm() > 1e-9 * (1.0 + bn.norm())) {
      // res is orthogonal to range(an): an^T res = 0 and bn^T res > 0.
      pp.infeasible = true;
      pp.ray = Vector::Zero(m);
      for (int r = 0; r < mz; ++r) pp.ray(nonzero[r]) = res(r) / scale(r);
      pp.ray /= -g.dot(pp.ray);
      return pp;
    }
  }
  std::vector<int> chosen;
  for (int r = 0; r < rank; ++r) chosen.push_back(qr.colsPermutation().indices()(r));
  std::sort(chosen.begin(), chosen.end());
  pp.a.resize(rank, a.cols());
  pp.b.resize(rank);
  pp.row_scale.resize(rank);
  for (int r = 0; r < rank; ++r) {
    pp.a.row(r) = an.row(chosen[r]);
    pp.b(r) = bn(chosen[r]);
    pp.row_scale(r) = scale(chosen[r]);
    pp.kept.push_back(nonzero[chosen[r]]);
  }
  return pp;
}

// Distance of sum_i y_i F_i from the dual cone, relative to |y|.
double DualConeViolation(const ConeSpec& cone, const Vector& z) {
  double viol = 0.0;
  for (int i = 0; i < cone.free; ++i) viol = std::max(viol, std::abs(z(i)));
  for (int i = 0; i < cone.nonneg; ++i) {
    viol = std::max(viol, -z(cone.free + i));
  }
  int off = cone.free + cone.nonneg;
  for (int k : cone.psd) {
    const int sz = SvecSize(k);
    viol = std::max(viol, -MinEigenvalue(Smat(z.segment(off, sz), k)));
    off += sz;
  }
  return viol;
}

void Decode(const ConeSpec& cone, const Vector& x, SdpSolution* sol) {
  sol->x = x;
  sol->free = x.head(cone.free);
  sol->nonneg = x.segment(cone.free, cone.nonneg);
  sol->blocks.clear();
  int off = cone.free + cone.nonneg;
  for (int k : cone.psd) {
    const int sz = SvecSize(k);
    sol->blocks.push_back(Smat(x.segment(off, sz), k));
    off += sz;
  }
}

}  // namespace

SdpSolution Solve(const SdpProblem& problem, const SdpOptions& options) {
  const double tol = options.feas_tol;
  const ConeSpec& cone = problem.cone();
  const Layout l = MakeLayout(cone);
  const Matrix a_user = problem.ConstraintMatrix();
  const Vector g = problem.Rhs();
  const Vector c_user = problem.Objective();
  const int m_user = problem.num_constraints();

  SdpSolution sol;
  sol.dual = Vector::Zero(m_user);

  Preprocessed pp = Preprocess(a_user, g, tol);
  if (pp.infeasible) {
    sol.status = SdpStatus::kInfeasible;
    sol.farkas_ray = pp.ray;
    sol.ray_residual =
        DualConeViolation(cone, a_user.transpose() * pp.ray) /
        std::max(1.0, pp.ray.norm());
    sol.message = "linear equality constraints are inconsistent";
    Decode(cone, Vector::Zero(problem.num_vars()), &sol);
    return sol;
  }

  // Internal problem: minimize c^T x, A x = b, x in K.
  const Matrix a = ToInternalColumns(pp.a, l);
  const Vector& b = pp.b;
  const Vector c = -ToInternal(c_user, l);
  const int m = static_cast<int>(a.rows());
  const double normb = std::max(1.0, b.norm());
  const double normc = std::max(1.0, c.norm());

  Vector x = ConeIdentity(l);
  Vector s = ConeIdentity(l);
  Vector y = Vector::Zero(m);
  double tau = 1.0;
  double kappa = 1.0;

  int stalls = 0;
  int iter = 0;
  for (;; ++iter) {
    const Vector f1 = a * x - b * tau;
    const Vector aty = a.transpose() * y;
    const Vector f2 = aty + s - c * tau;
    const double ctx = c.dot(x);
    const double bty = b.dot(y);
    const double f3 = ctx - bty + kappa;
    const double mu = (x.dot(s) + tau * kappa) / (l.degree + 1);

    const double pres = f1.norm() / tau / normb;
    const double dres = f2.norm() / tau / normc;
    const double pobj = ctx / tau;
    const double dobj = bty / tau;
    const double abs_gap = x.dot(s) / (tau * tau);
    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (options.trace != nullptr) {
      *options.trace << "iter " << iter << " mu " << mu << " pres " << pres
                     << " dres " << dres << " gap " << abs_gap << " tau "
                     << tau << " kappa " << kappa << "\n";
    }

    if (!std::isfinite(mu) || !std::isfinite(tau)) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "non-finite iterate";
      break;
    }
    if (pres <= tol && dres <= tol && (abs_gap <= tol || rel_gap <= tol)) {
      sol.status = SdpStatus::kOptimal;
      sol.primal_residual = pres;
      sol.dual_residual = dres;
      sol.gap = abs_gap;
      break;
    }
    if (bty > 0.0) {
      const double hres = (aty + s).norm() / bty;
      if (hres <= tol) {
        sol.status = SdpStatus::kInfeasible;
        break;
      }
    }
    if (ctx < 0.0) {
      const double hres = (a * x).norm() / -ctx;
      if (hres <= tol) {
        sol.status = SdpStatus::kUnbounded;
        break;
      }
    }
    if (iter >= options.max_iter) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "iteration limit reached";
      break;
    }

    Scaling sc;
    if (!ComputeScaling(l, x, s, &sc)) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "scaling computation failed";
      break;
    }
    NewtonSolver newton(l, a, b, c, sc, tau, kappa);
    if (!newton.Factor()) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "Schur complement factorization failed";
      break;
    }

    // Predictor.
    ComplRhs rc;
    rc.lp = -sc.lam.array().square();
    for (size_t bk = 0; bk < l.psd.size(); ++bk) {
      rc.psd.push_back(-Matrix(sc.d[bk].array().square().matrix().asDiagonal()));
    }
    Direction aff = newton.Solve(-f1, -f2, -f3, rc, -tau * kappa);
    double alpha_aff = std::min(ConeStep(l, x, aff.dx), ConeStep(l, s, aff.ds));
    if (aff.dtau < 0.0) alpha_aff = std::min(alpha_aff, -tau / aff.dtau);
    if (aff.dkappa < 0.0) alpha_aff = std::min(alpha_aff, -kappa / aff.dkappa);
    alpha_aff = std::min(1.0, alpha_aff);
    const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

    // Corrector.
    ComplRhs so = SecondOrderTerm(l, sc, aff);
    ComplRhs rcc;
    rcc.lp = sigma * mu - sc.lam.array().square() - so.lp.array();
    for (size_t bk = 0; bk < l.psd.size(); ++bk) {
      const int k = l.psd[bk];
      Matrix r = sigma * mu * Matrix::Identity(k, k) - so.psd[bk];
      r.diagonal().array() -= sc.d[bk].array().square();
      rcc.psd.push_back(std::move(r));
    }
    const double r5 = sigma * mu - tau * kappa - aff.dtau * aff.dkappa;
    Direction dir = newton.Solve(-(1.0 - sigma) * f1, -(1.0 - sigma) * f2,
                                 -(1.0 - sigma) * f3, rcc, r5);

    double alpha = std::min(ConeStep(l, x, dir.dx), ConeStep(l, s, dir.ds));
    if (dir.dtau < 0.0) alpha = std::min(alpha, -tau / dir.dtau);
    if (dir.dkappa < 0.0) alpha = std::min(alpha, -kappa / dir.dkappa);
    alpha = std::min(1.0, kStepFraction * alpha);
    if (!std::isfinite(alpha) || !dir.dx.allFinite() || !dir.dy.allFinite()) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "non-finite search direction";
      break;
    }

    x += alpha * dir.dx;
    s += alpha * dir.ds;
    y += alpha * dir.dy;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;

    stalls = alpha < 1e-8 ? stalls + 1 : 0;
    if (stalls >= 5) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "step length stalled";
      ++iter;
      break;
    }
  }
  sol.iterations = iter;

  // Map internal multipliers back to the original rows. The user dual is
  // y_user = -y_internal because the objective was negated.
  Vector y_orig = Vector::Zero(m_user);
  for (int r = 0; r < m; ++r) y_orig(pp.kept[r]) = y(r) / pp.row_scale(r);

  switch (sol.status) {
    case SdpStatus::kOptimal: {
      Decode(cone, ToUser(x, l) / tau, &sol);
      sol.dual = -y_orig / tau;
      sol.objective = c_user.dot(sol.x);
      sol.dual_objective = g.dot(sol.dual);
      break;
    }
    case SdpStatus::kInfeasible: {
      const double gy = g.dot(y_orig);
      sol.farkas_ray = -y_orig / gy;
      sol.ray_residual =
          DualConeViolation(cone, a_user.transpose() * sol.farkas_ray) /
          std::max(1.0, sol.farkas_ray.norm());
      Decode(cone, Vector::Zero(problem.num_vars()), &sol);
      if (sol.ray_residual > std::sqrt(tol)) {
        sol.status = SdpStatus::kNumericalFailure;
        sol.message = "infeasibility ray failed verification";
      }
      break;
    }
    case SdpStatus::kUnbounded: {
      Vector d = ToUser(x, l);
      sol.unbounded_direction = d / c_user.dot(d);
      Decode(cone, Vector::Zero(problem.num_vars()), &sol);
      break;
    }
    case SdpStatus::kNumericalFailure: {
      Decode(cone, ToUser(x, l) / tau, &sol);
      break;
    }
  }
  return sol;
}

SdpSolution SolveFeasibility(const SdpProblem& problem,
                             const SdpOptions& options) {
  const ConeSpec& cone = problem.cone();
  // Phase-I variables: original cone plus a free margin t (last free slot)
  // and a nonnegative cap slack (last nonneg slot) with t + slack = 1.
  ConeSpec ext = cone;
  ext.free += 1;
  ext.nonneg += 1;
  SdpProblem phase1(ext);
  const int t_index = cone.free;
  const int cap_index = cone.nonneg;

  const Matrix a = problem.ConstraintMatrix();
  const Vector g = problem.Rhs();
  Vector e = Vector::Zero(problem.num_vars());
  e.segment(cone.free, cone.nonneg).setOnes();
  for (size_t bk = 0; bk < cone.psd.size(); ++bk) {
    const int k = cone.psd[bk];
    e.segment(problem.BlockOffset(static_cast<int>(bk)), SvecSize(k)) =
        Svec(Matrix::Identity(k, k));
  }

  auto map_index = [&](int idx) {
    // Shift past the inserted free slot and, for PSD entries, the inserted
    // nonneg slot.
    if (idx < cone.free) return idx;
    if (idx < cone.free + cone.nonneg) return idx + 1;
    return idx + 2;
  };

  for (int r = 0; r < problem.num_constraints(); ++r) {
    const int row = phase1.AddConstraint(g(r));
    for (int idx = 0; idx < problem.num_vars(); ++idx) {
      const double v = a(r, idx);
      if (v != 0.0) phase1.AddVectorCoef(row, map_index(idx), v);
    }
    const double et = a.row(r).dot(e);
    phase1.AddFree(row, t_index, et);
  }
  const int cap_row = phase1.AddConstraint(1.0);
  phase1.AddFree(cap_row, t_index, 1.0);
  phase1.AddNonneg(cap_row, cap_index, 1.0);
  phase1.AddFree(SdpProblem::kObjective, t_index, 1.0);

  SdpSolution p1 = Solve(phase1, options);

  SdpSolution sol;
  sol.iterations = p1.iterations;
  sol.primal_residual = p1.primal_residual;
  sol.dual_residual = p1.dual_residual;
  sol.gap = p1.gap;
  sol.message = p1.message;
  const int m = problem.num_constraints();

  auto project = [&](const Vector& x1, double t) {
    Vector x(problem.num_vars());
    x.head(cone.free) = x1.head(cone.free);
    x.segment(cone.free, cone.nonneg) = x1.segment(ext.free, cone.nonneg);
    x.tail(problem.num_vars() - cone.free - cone.nonneg) =
        x1.tail(phase1.num_vars() - ext.free - ext.nonneg);
    return Vector(x + t * e);
  };

  switch (p1.status) {
    case SdpStatus::kOptimal: {
      const double t = p1.free(t_index);
      sol.margin = t;
      Decode(cone, project(p1.x, t), &sol);
      sol.dual = p1.dual.head(m);
      sol.objective = problem.Objective().dot(sol.x);
      if (t >= -options.feas_tol) {
        sol.status = SdpStatus::kOptimal;
      } else {
        sol.status = SdpStatus::kInfeasible;
        const Vector yr = p1.dual.head(m);
        const double gy = g.dot(yr);
        if (gy < 0.0) {
          sol.farkas_ray = yr / -gy;
          sol.ray_residual =
              DualConeViolation(cone, a.transpose() * sol.farkas_ray) /
              std::max(1.0, sol.farkas_ray.norm());
        } else {
          sol.status = SdpStatus::kNumericalFailure;
          sol.message = "phase-I dual does not separate";
        }
      }
      break;
    }
    case SdpStatus::kInfeasible: {
      sol.status = SdpStatus::kInfeasible;
      sol.farkas_ray = p1.farkas_ray.head(m);
      sol.ray_residual = p1.ray_residual;
      sol.margin = -std::numeric_limits<double>::infinity();
      Decode(cone, Vector::Zero(problem.num_vars()), &sol);
      break;
    }
    case SdpStatus::kUnbounded:
    case SdpStatus::kNumericalFailure: {
      sol.status = SdpStatus::kNumericalFailure;
      if (sol.message.empty()) sol.message = "phase-I problem did not converge";
      Decode(cone, Vector::Zero(problem.num_vars()), &sol);
      break;
    }
  }
  return sol;
}

}  // namespace contain
