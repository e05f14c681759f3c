#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "contain/linalg.h"
#include "contain/sdp.h"

namespace contain {

// A(x) = A_0 + x_1 A_1 + ... + x_n A_n with symmetric k x k coefficients.
class LinearPencil {
 public:
  LinearPencil() = default;
  // mats = {A_0, ..., A_n}; all of the same size.
  explicit LinearPencil(std::vector<SymMatrix> mats);

  int n() const { return static_cast<int>(mats_.size()) - 1; }
  int k() const { return mats_.empty() ? 0 : mats_[0].dim(); }
  const SymMatrix& mat(int p) const { return mats_.at(p); }
  const std::vector<SymMatrix>& mats() const { return mats_; }

  // A_0 == I_k exactly.
  bool IsMonic() const;

  SymMatrix Evaluate(const Vector& x) const;
  // Linear part sum_p u_p A_p.
  SymMatrix Direction(const Vector& u) const;
  bool ContainsPoint(const Vector& x, double tol = kDefaultPsdTol) const;

 private:
  std::vector<SymMatrix> mats_;
};

// {x : b + B x >= 0}.
struct HPolyhedron {
  Vector offsets;  // b, length m
  Matrix normals;  // B, m x n

  HPolyhedron() = default;
  HPolyhedron(Vector b, Matrix normals);

  int n() const { return static_cast<int>(normals.cols()); }
  int m() const { return static_cast<int>(normals.rows()); }
  bool ContainsPoint(const Vector& x, double tol = kDefaultPsdTol) const;
  // Offsets all equal to one.
  bool IsNormalForm() const;
};

// conv of the rows of `vertices` (m x n).
struct VPolytope {
  Matrix vertices;

  VPolytope() = default;
  explicit VPolytope(Matrix v);

  int n() const { return static_cast<int>(vertices.cols()); }
  int m() const { return static_cast<int>(vertices.rows()); }
};

// A_0' = A_0 - sum_p v_p A_p, so that S' = S + v.
LinearPencil Translate(const LinearPencil& p, const Vector& v);
// A_p -> A_p / nu for p >= 1. Requires a monic pencil; S' = nu * S.
LinearPencil Scale(const LinearPencil& p, double nu);
// Prepends a constant 1 on the diagonal; the set is unchanged.
LinearPencil Extend(const LinearPencil& p);
LinearPencil DirectSum(const std::vector<LinearPencil>& ps);

// diag(b_i + <B_i, x>) without any rescaling.
LinearPencil DiagonalPencil(const HPolyhedron& h);
// Divides every inequality by its offset and returns the monic diagonal
// pencil. Throws NotNormalizable if some offset is <= 0.
HPolyhedron Normalize(const HPolyhedron& h);
LinearPencil FromHPolyhedron(const HPolyhedron& h);

struct CenteredPolyhedron {
  Vector center;        // interior point found by the LP
  double radius = 0.0;  // inscribed ball radius around center (capped at 1)
  HPolyhedron normalized;
  LinearPencil pencil;
};

// Moves the largest inscribed ball center to the origin and normalizes.
// Throws NotNormalizable if the polyhedron is empty or has no interior.
CenteredPolyhedron CenterAndNormalize(const HPolyhedron& h,
                                      const SdpOptions& options = {});

// I_{n+1} + sum_p (x_p / a_p)(E_{p,n+1} + E_{n+1,p}).
LinearPencil EllipsoidPencil(const Vector& semi_axes);
LinearPencil BallPencil(int n, double r);

// I_{2n} + (1/r) sum_p x_p (E_pp - E_{n+p,n+p}), the cube [-r, r]^n.
LinearPencil CubePencil(int n, double r);

// If every coefficient matrix is diagonal, the polyhedron it describes.
std::optional<HPolyhedron> AsHPolyhedron(const LinearPencil& p);
// If p is exactly an ellipsoid normal form, its semi-axes.
std::optional<Vector> AsEllipsoid(const LinearPencil& p);

// sup{t >= 0 : I + t * sum_p u_p A_p >= 0}; infinity if unrestricted.
double BoundaryRay(const LinearPencil& p, const Vector& u);

inline constexpr double kBoundedCap = 1e8;

struct SupportResult {
  // Optimal: finite value; Unbounded: value = +inf; Empty: S_A is empty.
  enum Kind { kFinite, kUnbounded, kEmpty, kFailed } kind = kFailed;
  double value = 0.0;
  Vector maximizer;
  // Optimal Y of min <A_0, Y> s.t. <A_p, Y> = -w_p, Y >= 0.
  Matrix dual;
  SdpSolution solution;
};

// sup <w, x> over S_A.
SupportResult Support(const LinearPencil& p, const Vector& w,
                      const SdpOptions& options = {});

// max over x of lambda_min(A(x)), i.e. min <A_0, Y> s.t. <A_p, Y> = 0,
// tr Y = 1. Negative: S_A empty; zero: no interior; +inf when unbounded above.
double InteriorMargin(const LinearPencil& p, const SdpOptions& options = {});

// True iff sup of +-x_p over S_A is finite and below kBoundedCap for all p.
// Throws EmptySpectrahedron when S_A is empty, NumericalFailure when the
// solver cannot decide.
bool IsBounded(const LinearPencil& p, const SdpOptions& options = {});

// Vertices of a bounded polyhedron by brute force over n-subsets of the
// inequalities. Empty result means the polyhedron is empty.
Matrix EnumerateVertices(const HPolyhedron& h, double tol = 1e-9);

}  // namespace contain
