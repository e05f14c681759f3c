#include <gtest/gtest.h>

#include <random>

#include "contain/errors.h"
#include "contain/linalg.h"

using namespace contain;

namespace {

Matrix RandomPsd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Matrix f(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f(i, j) = g(rng);
  return f * f.transpose();
}

}  // namespace

TEST(SymMatrix, SymmetrizesOnConstruction) {
  Matrix m(2, 2);
  m << 1, 2, 4, 3;
  SymMatrix s(m);
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_EQ(s(0, 1), s(1, 0));
  EXPECT_EQ(SymMatrix::Unit(3, 0, 2)(2, 0), 1.0);
  EXPECT_EQ(SymMatrix::Unit(3, 1, 1)(1, 1), 1.0);
}

TEST(IsPsd, BoundaryAndIndefinite) {
  Matrix rank_one = Vector::Ones(3) * Vector::Ones(3).transpose();
  EXPECT_TRUE(IsPsd(rank_one).psd);
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  const PsdReport r = IsPsd(indefinite);
  EXPECT_FALSE(r.psd);
  EXPECT_NEAR(r.min_eigenvalue, -1.0, 1e-12);
}

TEST(Kron, MatchesDefinition) {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const Matrix k = Kron(a, b);
  ASSERT_EQ(k.rows(), 4);
  EXPECT_EQ(k(0, 1), 1.0);
  EXPECT_EQ(k(2, 3), 4.0);
  EXPECT_EQ(k(3, 0), 3.0);
}

TEST(Kron, PsdTimesPsdIsPsd) {
  const Matrix k = Kron(RandomPsd(3, 1), RandomPsd(2, 2));
  EXPECT_TRUE(IsPsd(Matrix(0.5 * (k + k.transpose()))).psd);
}

TEST(KhatriRao, BlockwiseKronecker) {
  const Matrix a = RandomPsd(4, 3);
  const Matrix b = RandomPsd(6, 4);
  const BlockMatrix kr = KhatriRao(BlockMatrix(a, 2, 2, 2), BlockMatrix(b, 2, 2, 3));
  EXPECT_EQ(kr.block_size(), 6);
  const Matrix expected = Kron(Matrix(a.block(0, 2, 2, 2)), Matrix(b.block(0, 3, 3, 3)));
  EXPECT_LT((kr.Block(0, 1) - expected).cwiseAbs().maxCoeff(), 1e-12);
  // Sum over s, t of A_st (x) B_st for PSD block matrices is PSD.
  Matrix sum = Matrix::Zero(6, 6);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) sum += kr.Block(s, t);
  EXPECT_TRUE(IsPsd(Matrix(0.5 * (sum + sum.transpose()))).psd);
}

TEST(SchurComplement, KnownValue) {
  Matrix m(2, 2);
  m << 4, 2, 2, 3;
  const SymMatrix s = SchurComplement(SymMatrix(m), 0, 1);
  ASSERT_EQ(s.dim(), 1);
  EXPECT_NEAR(s(0, 0), 2.0, 1e-12);
  Matrix singular = Matrix::Zero(2, 2);
  singular(1, 1) = 1.0;
  EXPECT_THROW(SchurComplement(SymMatrix(singular), 0, 1), SingularPivot);
}

TEST(NumericalRank, CountsSingularValues) {
  EXPECT_EQ(NumericalRank(Vector::Ones(4) * Vector::Ones(4).transpose()), 1);
  EXPECT_EQ(NumericalRank(Matrix::Identity(3, 3)), 3);
  EXPECT_EQ(NumericalRank(Matrix::Zero(3, 3)), 0);
}

TEST(Svec, InnerProductIsTrace) {
  const Matrix a = RandomPsd(4, 5);
  const Matrix b = RandomPsd(4, 6);
  EXPECT_EQ(Svec(a).size(), SvecSize(4));
  EXPECT_NEAR(Svec(a).dot(Svec(b)), (a * b).trace(), 1e-9);
  EXPECT_LT((Smat(Svec(a), 4) - a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kron, DiagonalCase) {
  Vector a(2), b(2), expected(4);
  a << 1, 2;
  b << 3, 4;
  expected << 3, 4, 6, 8;
  const SymMatrix k = Kron(SymMatrix::Diagonal(a), SymMatrix::Diagonal(b));
  EXPECT_EQ(k.dense(), Matrix(expected.asDiagonal()));
  EXPECT_EQ(Kron(SymMatrix::Identity(2), SymMatrix::Identity(3)), SymMatrix::Identity(6));
}

TEST(KhatriRao, MismatchedGrid) {
  EXPECT_THROW(KhatriRao(BlockMatrix(Matrix::Identity(4, 4), 2, 2, 2), BlockMatrix(Matrix::Identity(3, 3), 3, 3, 1)),
               DimensionError);
}

TEST(SchurComplement, AgreesWithIsPsd) {
  EXPECT_EQ(SchurComplement(SymMatrix::Identity(4), 0, 2), SymMatrix::Identity(2));
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    Matrix m = RandomPsd(4, 100 + t);
    m.block(0, 0, 2, 2) += Matrix::Identity(2, 2);
    // Push the trailing block around so that both outcomes occur.
    m.block(2, 2, 2, 2) -= 2.0 * std::abs(g(rng)) * Matrix::Identity(2, 2);
    const SymMatrix s(m);
    EXPECT_EQ(IsPsd(s).psd, IsPsd(SchurComplement(s, 0, 2)).psd);
  }
}

TEST(IsPsd, MonotoneInTolerance) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1e-7;
  EXPECT_FALSE(IsPsd(m, 1e-8).psd);
  EXPECT_TRUE(IsPsd(m, 1e-6).psd);
  EXPECT_TRUE(IsPsd(Matrix::Identity(3, 3), 0.0).psd);
}
