#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "contain/criteria.h"
#include "contain/errors.h"

namespace contain {

namespace {

constexpr long kSearchBudget = 200000;

// Signed permutation search: sign_i sign_j M_q(perm_i, perm_j) == eps_q M_q(i, j).
class SignedPermutationSearch {
 public:
  SignedPermutationSearch(std::vector<Matrix> mats, std::vector<double> eps)
      : mats_(std::move(mats)), eps_(std::move(eps)) {
    k_ = static_cast<int>(mats_[0].rows());
    double scale = 0.0;
    for (const auto& m : mats_) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    tol_ = 1e-12 * std::max(1.0, scale);
    perm_.assign(k_, -1);
    sign_.assign(k_, 1);
    used_.assign(k_, false);
  }

  // 1 found, 0 none exists, -1 budget exhausted.
  int Run() {
    const bool found = Recurse(0);
    if (found) return 1;
    return budget_ < 0 ? -1 : 0;
  }

 private:
  bool Consistent(int idx) const {
    for (size_t q = 0; q < mats_.size(); ++q) {
      const Matrix& m = mats_[q];
      for (int j = 0; j <= idx; ++j) {
        const double lhs = sign_[idx] * sign_[j] * m(perm_[idx], perm_[j]);
        if (std::abs(lhs - eps_[q] * m(idx, j)) > tol_) return false;
      }
    }
    return true;
  }

  bool Recurse(int idx) {
    if (idx == k_) return true;
    for (int cand = 0; cand < k_; ++cand) {
      if (used_[cand]) continue;
      for (int s : {1, -1}) {
        if (--budget_ < 0) return false;
        perm_[idx] = cand;
        sign_[idx] = s;
        if (!Consistent(idx)) continue;
        used_[cand] = true;
        if (Recurse(idx + 1)) return true;
        used_[cand] = false;
        if (budget_ < 0) return false;
      }
    }
    perm_[idx] = -1;
    return false;
  }

  std::vector<Matrix> mats_;
  std::vector<double> eps_;
  int k_ = 0;
  double tol_ = 0.0;
  std::vector<int> perm_;
  std::vector<int> sign_;
  std::vector<bool> used_;
  long budget_ = kSearchBudget;
};

// Sampled membership symmetry. Returns the coordinate of the first violated
// reflection, or -1.
int SampledAsymmetry(const LinearPencil& a, const CriteriaOptions& opts) {
  Eigen::LLT<Matrix> llt(a.mat(0).dense());
  if (llt.info() != Eigen::Success) return -2;
  const Matrix lower = llt.matrixL();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = a.n();
  for (int it = 0; it < opts.symmetry_samples; ++it) {
    Vector u(n);
    for (int p = 0; p < n; ++p) u(p) = gauss(rng);
    u.normalize();
    Matrix m = a.Direction(u).dense();
    Matrix w = lower.triangularView<Eigen::Lower>().solve(m);
    w = lower.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    const double lmin = MinEigenvalue(0.5 * (w + w.transpose()));
    const double tmax = lmin < 0.0 ? -1.0 / lmin : 10.0;
    const Vector x = unif(rng) * tmax * u;
    for (int p = 0; p < n; ++p) {
      Vector r = x;
      r(p) = -r(p);
      if (!a.ContainsPoint(r, 1e-7)) return p;
    }
  }
  return -1;
}

}  // namespace

SymmetryReport CheckReflectionSymmetry(const LinearPencil& a,
                                       const CriteriaOptions& opts) {
  SymmetryReport rep;
  std::vector<Matrix> mats;
  for (const auto& m : a.mats()) mats.push_back(m.dense());
  bool structural = true;
  bool exhausted = false;
  for (int p = 1; p <= a.n() && structural; ++p) {
    std::vector<double> eps(mats.size(), 1.0);
    eps[p] = -1.0;
    const int res = SignedPermutationSearch(mats, eps).Run();
    if (res != 1) {
      structural = false;
      exhausted = res < 0;
      rep.detail = "no signed permutation for coordinate " + std::to_string(p - 1) +
                   (exhausted ? " (search budget exhausted)" : "");
    }
  }
  if (structural) {
    rep.symmetric = true;
    rep.detail = "structural signed-permutation symmetry";
    return rep;
  }
  const int bad = SampledAsymmetry(a, opts);
  if (bad == -1) {
    rep.symmetric = true;
    rep.heuristic = true;
    rep.detail += "; sampled membership symmetry with zero violations";
  } else if (bad == -2) {
    rep.detail += "; A_0 not positive definite, sampling skipped";
  } else {
    rep.detail += "; sampled reflection in coordinate " + std::to_string(bad) +
                  " leaves the set";
  }
  return rep;
}

PositivePrecondition CheckPositivePrecondition(const LinearPencil& a,
                                               const LinearPencil& b,
                                               const CriteriaOptions& opts) {
  PositivePrecondition pre;
  const SymmetryReport sa = CheckReflectionSymmetry(a, opts);
  if (sa.symmetric) {
    const SymmetryReport sb = CheckReflectionSymmetry(b, opts);
    if (sb.symmetric) {
      pre.ok = true;
      pre.heuristic = sa.heuristic || sb.heuristic;
      pre.reason = "both sets reflection symmetric (inner: " + sa.detail +
                   "; outer: " + sb.detail + ")";
      return pre;
    }
  }
  for (int p = 0; p < a.n(); ++p) {
    Vector w = Vector::Zero(a.n());
    w(p) = -1.0;
    SupportResult r = Support(a, w, opts.sdp());
    if (r.kind == SupportResult::kEmpty) continue;
    if (r.kind != SupportResult::kFinite || r.value > opts.feas_tol) {
      pre.reason = "inner set is not in the nonnegative orthant (coordinate " +
                   std::to_string(p) + ") and the sets are not both reflection "
                   "symmetric";
      return pre;
    }
  }
  pre.ok = true;
  pre.reason = "inner set lies in the nonnegative orthant";
  return pre;
}

}  // namespace contain
