#include <gtest/gtest.h>

#include <cmath>

#include "contain/errors.h"
#include "contain/generators.h"

using namespace contain;

TEST(Sat3, BruteForce) {
  EXPECT_TRUE(BruteForceSatisfiable({2, {{1, 2}, {-1}}}));
  EXPECT_FALSE(BruteForceSatisfiable({1, {{1}, {-1}}}));
  EXPECT_FALSE(BruteForceSatisfiable({2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}}));
  EXPECT_TRUE(BruteForceSatisfiable({3, {}}));
}

TEST(Sat3, Validation) {
  EXPECT_THROW(ValidateSat3({2, {{1, 2, -1, 2}}}), UsageError);
  EXPECT_THROW(ValidateSat3({2, {{3}}}), UsageError);
  EXPECT_THROW(ValidateSat3({2, {{}}}), UsageError);
  EXPECT_THROW(GenSat3Reduction({1, {{1}}}), UsageError);
}

TEST(Sat3, ReductionRows) {
  const Sat3Reduction red = GenSat3Reduction({3, {{1, -2, 3}, {2, 2}, {1, -1, 3}}});
  // Six cube rows, one row per clause except the tautology.
  ASSERT_EQ(red.polytope.m(), 8);
  EXPECT_EQ(red.polytope.offsets(6), 1.0);
  EXPECT_EQ(red.polytope.normals(6, 0), 1.0);
  EXPECT_EQ(red.polytope.normals(6, 1), -1.0);
  EXPECT_EQ(red.polytope.normals(6, 2), 1.0);
  // Duplicate literal collapses to a one-literal clause: x_2 >= 1.
  EXPECT_EQ(red.polytope.offsets(7), -1.0);
  EXPECT_EQ(red.polytope.normals(7, 1), 1.0);
}

TEST(Sat3, RadiusInsideInterval) {
  for (int n = 2; n <= 10; ++n) {
    const Sat3Reduction red = GenSat3Reduction({n, {}});
    const double lo = 1.0 / 36.0 + std::pow(std::sqrt(n) - 1.0 / 6.0, 2);
    EXPECT_GT(red.radius_sq, lo);
    EXPECT_LT(red.radius_sq, n);
  }
}

TEST(Sat3, UnsatIsContained) {
  const Sat3Instance unsat{2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}}};
  EXPECT_TRUE(VertexContainment(GenSat3Reduction(unsat)));
  const Sat3Instance sat{3, {{1, 2, 3}, {-1, -2}}};
  EXPECT_FALSE(VertexContainment(GenSat3Reduction(sat)));
}

TEST(DiscPair, Structure) {
  const DiscPair d = GenDiscPair();
  EXPECT_EQ(d.a.k(), 3);
  EXPECT_EQ(d.b.k(), 2);
  Vector x(2);
  x << 0.6, 0.8;
  EXPECT_TRUE(d.a.ContainsPoint(x));
  EXPECT_TRUE(d.b.ContainsPoint(x));
  EXPECT_FALSE(d.b.ContainsPoint(1.01 * x));
}

TEST(RandomSpectrahedron, DeterministicAndContainsSmallBall) {
  const LinearPencil a = GenRandomSpectrahedron(4, 5, 42, false);
  const LinearPencil b = GenRandomSpectrahedron(4, 5, 42, false);
  for (int p = 0; p <= 4; ++p) EXPECT_EQ(a.mat(p), b.mat(p));
  EXPECT_TRUE(a.IsMonic());
  for (int p = 1; p <= 4; ++p) {
    Vector x = Vector::Zero(4);
    x(p - 1) = 0.1;
    EXPECT_TRUE(a.ContainsPoint(x));
    EXPECT_TRUE(a.ContainsPoint(-x));
  }
  const LinearPencil c = GenRandomSpectrahedron(2, 3, 1, true);
  EXPECT_EQ(c.k(), 3 + 4);
  EXPECT_TRUE(IsBounded(c));
}

TEST(RandomPolytope, BoundedNormalForm) {
  const HPolyhedron h = GenRandomPolytope(3, 6, 17);
  EXPECT_TRUE(h.IsNormalForm());
  EXPECT_TRUE(IsBounded(FromHPolyhedron(h)));
  EXPECT_THROW(GenRandomPolytope(3, 3, 1), UsageError);
}
