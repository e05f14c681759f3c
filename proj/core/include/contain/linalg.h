#pragma once

#include <Eigen/Dense>

namespace contain {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultPsdTol = 1e-8;

// Dense real symmetric matrix. The input is symmetrized on construction so
// that entry (i, j) and entry (j, i) are bitwise equal.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  explicit SymMatrix(Matrix&& m);

  static SymMatrix Identity(int dim);
  static SymMatrix Zero(int dim);
  // E_ij + E_ji (or E_ii when i == j).
  static SymMatrix Unit(int dim, int i, int j);
  static SymMatrix Diagonal(const Vector& d);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Matrix& dense() const { return m_; }

  // Max absolute entry.
  double MaxAbs() const;

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator*(double s) const;
  SymMatrix operator-() const;

  bool operator==(const SymMatrix& o) const { return m_ == o.m_; }

 private:
  Matrix m_;
};

inline SymMatrix operator*(double s, const SymMatrix& m) { return m * s; }

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

// True iff lambda_min(M) >= -tol * (1 + max|M_ij|). The input must already be
// symmetric; only the lower triangle is read.
PsdReport IsPsd(const Matrix& m, double tol = kDefaultPsdTol);
PsdReport IsPsd(const SymMatrix& m, double tol = kDefaultPsdTol);

double MinEigenvalue(const Matrix& m);

SymMatrix Kron(const SymMatrix& a, const SymMatrix& b);
Matrix Kron(const Matrix& a, const Matrix& b);

// Square matrix viewed as a grid of equally sized square blocks.
class BlockMatrix {
 public:
  BlockMatrix(Matrix data, int block_rows, int block_cols, int block_size);

  int block_rows() const { return block_rows_; }
  int block_cols() const { return block_cols_; }
  int block_size() const { return block_size_; }
  const Matrix& dense() const { return data_; }

  Matrix Block(int i, int j) const;

 private:
  Matrix data_;
  int block_rows_;
  int block_cols_;
  int block_size_;
};

// Blockwise Kronecker product (A_ij (x) B_ij)_ij. Both grids must agree.
BlockMatrix KhatriRao(const BlockMatrix& a, const BlockMatrix& b);

// Schur complement of the principal block [begin, end) of m. Throws
// SingularPivot if the pivot is not positive definite beyond tol.
SymMatrix SchurComplement(const SymMatrix& m, int begin, int end,
                          double tol = kDefaultPsdTol);

// Number of singular values above rel_tol * sigma_max.
int NumericalRank(const Matrix& m, double rel_tol = 1e-10);

// Scaled half-vectorization: off-diagonal entries carry a sqrt(2) factor so
// that Svec(A).dot(Svec(B)) == trace(A * B).
Vector Svec(const Matrix& m);
Matrix Smat(const Eigen::Ref<const Vector>& v, int dim);
inline int SvecSize(int dim) { return dim * (dim + 1) / 2; }

}  // namespace contain
