#pragma once

#include <string>
#include <vector>

#include "contain/linalg.h"
#include "contain/pencil.h"

namespace contain {

// exact:    B_p = sum_ij a^p_ij C_ij            for p = 0..n
// relaxed:  B_0 - sum_ij a^0_ij C_ij >= 0, equalities for p >= 1
// positive: B_p - sum_ij a^p_ij C_ij >= 0       for p = 0..n
enum class Variant { kExact, kRelaxed, kPositive };

enum class Provenance {
  kSolver,
  kAnalyticEllipsoid,
  kAnalyticBall,
  kAnalyticLp,
  kComposed,
  kBlockJoined,
  kIdentity,
};

const char* ToString(Variant v);
const char* ToString(Provenance p);
// Accepts "exact"/"hkm", "relaxed"/"hkm-relaxed", "positive"/"hkm-positive".
Variant ParseVariant(const std::string& s);
Provenance ParseProvenance(const std::string& s);

inline constexpr double kCertificateTol = 1e-7;

// Choi matrix C = (C_ij), i, j = 0..k-1, each block l x l.
struct ChoiCertificate {
  int k = 0;
  int l = 0;
  Matrix C;
  Variant variant = Variant::kExact;
  // G_p = B_p - sum_ij a^p_ij C_ij. Empty for exact, {G_0} for relaxed,
  // {G_0, ..., G_n} for positive.
  std::vector<Matrix> slacks;
  Provenance provenance = Provenance::kSolver;

  Matrix Block(int i, int j) const { return C.block(i * l, j * l, l, l); }
};

// sum_ij a_ij C_ij for a k x k coefficient matrix a.
Matrix ChoiApply(const ChoiCertificate& cert, const Matrix& a);

struct VerifyReport {
  bool ok = false;
  // max_p |B_p - sum a^p_ij C_ij|_inf / max(1, |B_p|_inf) over the equality
  // rows, plus any mismatch between stored and recomputed slacks.
  double max_equality_residual = 0.0;
  double min_eig_C = 0.0;
  // Smallest eigenvalue over the inequality slacks (+inf when there are none).
  double min_eig_slacks = 0.0;
  std::string message;
};

VerifyReport Verify(const ChoiCertificate& cert, const LinearPencil& a,
                    const LinearPencil& b, double tol = kCertificateTol);

// C_ij = E_ij: certifies S_A in S_A for any pencil with k rows.
ChoiCertificate IdentityCertificate(int k);

// Certificate for the axis-aligned ellipsoid with semi-axes a inside the one
// with semi-axes b, both in normal form. Throws ContainmentFalse(p) if
// a_p > b_p for some p.
ChoiCertificate AnalyticEllipsoid(const Vector& a, const Vector& b);

// Certificate for the ball of radius r (normal form) inside the normal-form
// polyhedron q. Throws ContainmentFalse(s) if r^2 |b_s|^2 > 1 for a row s.
ChoiCertificate AnalyticBallInPolyhedron(double r, const HPolyhedron& q);

// Diagonal certificate from a row-stochastic matrix: stochastic(i, j) is the
// weight of inner row j in outer row i, so that (C_jj)_ii = stochastic(i, j).
// For an extended inner pencil, column 0 is the constant row.
ChoiCertificate AnalyticHInH(const Matrix& stochastic);

// Certificate for S_D in S_F from certificates for S_D in S_E and S_E in S_F.
// exact o exact is exact, any positive input makes it positive, otherwise
// relaxed.
ChoiCertificate Compose(const ChoiCertificate& de, const ChoiCertificate& ef);

// Sizes of the finest contiguous block-diagonal structure shared by all
// coefficient matrices.
std::vector<int> ContiguousBlocks(const LinearPencil& b);

// Principal submatrices of every C_ij on each diagonal block of B.
std::vector<ChoiCertificate> SplitBlocks(const ChoiCertificate& cert,
                                         const std::vector<int>& sizes);
// C_ij = direct sum over q of C^q_ij; cross-block couplings are zero.
ChoiCertificate JoinBlocks(const std::vector<ChoiCertificate>& parts);

// Block pencil q of a block-diagonal pencil.
LinearPencil PencilBlock(const LinearPencil& b, const std::vector<int>& sizes,
                         int q);

}  // namespace contain
