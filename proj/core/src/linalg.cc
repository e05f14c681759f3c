#include "contain/linalg.h"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "contain/errors.h"

namespace contain {

namespace {

Matrix Symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("SymMatrix: matrix is " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + ", not square");
  }
  if (m.rows() < 1) throw DimensionError("SymMatrix: dimension must be >= 1");
  Matrix s = 0.5 * (m + m.transpose());
  // Force bitwise symmetry; the average above can differ in the last ulp.
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < s.rows(); ++i) s(j, i) = s(i, j);
  }
  return s;
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& m) : m_(Symmetrized(m)) {}
SymMatrix::SymMatrix(Matrix&& m) : m_(Symmetrized(m)) {}

SymMatrix SymMatrix::Identity(int dim) {
  return SymMatrix(Matrix::Identity(dim, dim));
}

SymMatrix SymMatrix::Zero(int dim) { return SymMatrix(Matrix::Zero(dim, dim)); }

SymMatrix SymMatrix::Unit(int dim, int i, int j) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::Diagonal(const Vector& d) {
  return SymMatrix(Matrix(d.asDiagonal()));
}

double SymMatrix::MaxAbs() const { return m_.cwiseAbs().maxCoeff(); }

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  if (dim() != o.dim()) throw DimensionError("SymMatrix: size mismatch in +");
  return SymMatrix(Matrix(m_ + o.m_));
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  if (dim() != o.dim()) throw DimensionError("SymMatrix: size mismatch in -");
  return SymMatrix(Matrix(m_ - o.m_));
}

SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(Matrix(m_ * s)); }

SymMatrix SymMatrix::operator-() const { return SymMatrix(Matrix(-m_)); }

double MinEigenvalue(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("symmetric eigensolver did not converge");
  }
  return es.eigenvalues()(0);
}

PsdReport IsPsd(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("IsPsd: matrix not square");
  PsdReport r;
  r.min_eigenvalue = MinEigenvalue(m);
  if (!std::isfinite(r.min_eigenvalue)) {
    throw NumericalFailure("IsPsd: non-finite eigenvalue");
  }
  const double scale = 1.0 + (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  r.psd = r.min_eigenvalue >= -tol * scale;
  return r;
}

PsdReport IsPsd(const SymMatrix& m, double tol) { return IsPsd(m.dense(), tol); }

Matrix Kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SymMatrix Kron(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix(Kron(a.dense(), b.dense()));
}

BlockMatrix::BlockMatrix(Matrix data, int block_rows, int block_cols,
                         int block_size)
    : data_(std::move(data)),
      block_rows_(block_rows),
      block_cols_(block_cols),
      block_size_(block_size) {
  if (block_rows < 1 || block_cols < 1 || block_size < 1 ||
      data_.rows() != block_rows * block_size ||
      data_.cols() != block_cols * block_size) {
    throw DimensionError("BlockMatrix: grid does not match data shape");
  }
}

Matrix BlockMatrix::Block(int i, int j) const {
  return data_.block(i * block_size_, j * block_size_, block_size_,
                     block_size_);
}

BlockMatrix KhatriRao(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.block_rows() != b.block_rows() || a.block_cols() != b.block_cols()) {
    throw DimensionError("KhatriRao: block grids differ");
  }
  const int p = a.block_size();
  const int q = b.block_size();
  const int bs = p * q;
  Matrix out(a.block_rows() * bs, a.block_cols() * bs);
  for (int i = 0; i < a.block_rows(); ++i) {
    for (int j = 0; j < a.block_cols(); ++j) {
      out.block(i * bs, j * bs, bs, bs) = Kron(a.Block(i, j), b.Block(i, j));
    }
  }
  return BlockMatrix(std::move(out), a.block_rows(), a.block_cols(), bs);
}

SymMatrix SchurComplement(const SymMatrix& m, int begin, int end, double tol) {
  const int n = m.dim();
  if (begin < 0 || end > n || begin >= end) {
    throw DimensionError("SchurComplement: invalid pivot range");
  }
  if (end - begin == n) {
    throw DimensionError("SchurComplement: pivot covers the whole matrix");
  }
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (i < begin || i >= end) rest.push_back(i);
  }
  const int pk = end - begin;
  const int rk = static_cast<int>(rest.size());
  Matrix m11 = m.dense().block(begin, begin, pk, pk);
  Matrix m21(rk, pk);
  Matrix m22(rk, rk);
  for (int r = 0; r < rk; ++r) {
    m21.row(r) = m.dense().block(rest[r], begin, 1, pk);
    for (int c = 0; c < rk; ++c) m22(r, c) = m(rest[r], rest[c]);
  }
  const double lmin = MinEigenvalue(m11);
  if (!(lmin > tol * (1.0 + m11.cwiseAbs().maxCoeff()))) {
    throw SingularPivot("SchurComplement: pivot block is not positive definite "
                        "(lambda_min = " + std::to_string(lmin) + ")");
  }
  Eigen::LLT<Matrix> llt(m11);
  if (llt.info() != Eigen::Success) {
    throw SingularPivot("SchurComplement: Cholesky of pivot failed");
  }
  Matrix x = llt.solve(m21.transpose());
  return SymMatrix(Matrix(m22 - m21 * x));
}

int NumericalRank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

Vector Svec(const Matrix& m) {
  const int k = static_cast<int>(m.rows());
  Vector v(SvecSize(k));
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    v(idx++) = m(j, j);
    for (int i = j + 1; i < k; ++i) v(idx++) = M_SQRT2 * m(i, j);
  }
  return v;
}

Matrix Smat(const Eigen::Ref<const Vector>& v, int dim) {
  if (v.size() != SvecSize(dim)) throw DimensionError("Smat: length mismatch");
  Matrix m(dim, dim);
  int idx = 0;
  for (int j = 0; j < dim; ++j) {
    m(j, j) = v(idx++);
    for (int i = j + 1; i < dim; ++i) {
      m(i, j) = v(idx++) * M_SQRT1_2;
      m(j, i) = m(i, j);
    }
  }
  return m;
}

}  // namespace contain
