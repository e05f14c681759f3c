#include <gtest/gtest.h>

#include <cmath>

#include "contain/sdp.h"

using namespace contain;

// max x  s.t.  diag(1 - x, 1 + x) >= 0
TEST(Solve, ScalarSdpOptimum) {
  SdpProblem p(ConeSpec{1, 0, {2}});
  int r = p.AddConstraint(1.0);
  p.AddEntry(r, 0, 0, 0, 1.0);
  p.AddFree(r, 0, 1.0);
  r = p.AddConstraint(1.0);
  p.AddEntry(r, 0, 1, 1, 1.0);
  p.AddFree(r, 0, -1.0);
  r = p.AddConstraint(0.0);
  p.AddEntry(r, 0, 0, 1, 1.0);
  p.AddFree(SdpProblem::kObjective, 0, 1.0);
  const SdpSolution s = Solve(p);
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.free(0), 1.0, 1e-7);
  EXPECT_NEAR(s.objective, 1.0, 1e-7);
  EXPECT_LT(s.gap, 1e-6);
}

// max x1 + x2  s.t.  x1 + 2 x2 <= 4, 3 x1 + x2 <= 6, x >= 0. Optimum 2.8 at
// (1.6, 1.2).
TEST(Solve, LinearProgram) {
  SdpProblem p(ConeSpec{0, 4, {}});
  int r = p.AddConstraint(4.0);
  p.AddNonneg(r, 0, 1.0);
  p.AddNonneg(r, 1, 2.0);
  p.AddNonneg(r, 2, 1.0);
  r = p.AddConstraint(6.0);
  p.AddNonneg(r, 0, 3.0);
  p.AddNonneg(r, 1, 1.0);
  p.AddNonneg(r, 3, 1.0);
  p.AddNonneg(SdpProblem::kObjective, 0, 1.0);
  p.AddNonneg(SdpProblem::kObjective, 1, 1.0);
  const SdpSolution s = Solve(p);
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 2.8, 1e-7);
  EXPECT_NEAR(s.nonneg(0), 1.6, 1e-6);
  EXPECT_NEAR(s.nonneg(1), 1.2, 1e-6);
}

// tr X = -1 has no PSD solution.
TEST(Solve, InfeasibleWithRay) {
  SdpProblem p(ConeSpec{0, 0, {3}});
  const int r = p.AddConstraint(-1.0);
  p.AddBlock(r, 0, Matrix::Identity(3, 3));
  const SdpSolution s = Solve(p);
  ASSERT_EQ(s.status, SdpStatus::kInfeasible);
  ASSERT_EQ(s.farkas_ray.size(), 1);
  EXPECT_GT(s.farkas_ray(0), 0.0);
  const SdpSolution f = SolveFeasibility(p);
  EXPECT_EQ(f.status, SdpStatus::kInfeasible);
  EXPECT_NEAR(f.margin, -1.0 / 3.0, 1e-6);
}

// max X_00 with only X_01 = 0.
TEST(Solve, Unbounded) {
  SdpProblem p(ConeSpec{0, 0, {2}});
  const int r = p.AddConstraint(0.0);
  p.AddEntry(r, 0, 0, 1, 1.0);
  p.AddEntry(SdpProblem::kObjective, 0, 0, 0, 1.0);
  EXPECT_EQ(Solve(p).status, SdpStatus::kUnbounded);
}

// tr X = 1: the largest lambda_min is 1/3 at X = I/3.
TEST(SolveFeasibility, MarginOfTraceConstraint) {
  SdpProblem p(ConeSpec{0, 0, {3}});
  const int r = p.AddConstraint(1.0);
  p.AddBlock(r, 0, Matrix::Identity(3, 3));
  const SdpSolution f = SolveFeasibility(p);
  ASSERT_EQ(f.status, SdpStatus::kOptimal);
  EXPECT_NEAR(f.margin, 1.0 / 3.0, 1e-6);
  EXPECT_LT((f.blocks[0] - Matrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(SdpProblem, RedundantRowsAreTolerated) {
  SdpProblem p(ConeSpec{1, 0, {}});
  for (int i = 0; i < 2; ++i) {
    const int r = p.AddConstraint(2.0);
    p.AddFree(r, 0, 1.0);
  }
  const SdpSolution s = Solve(p);
  ASSERT_EQ(s.status, SdpStatus::kOptimal);
  EXPECT_NEAR(s.free(0), 2.0, 1e-7);
}

TEST(SdpProblem, InconsistentEqualities) {
  SdpProblem p(ConeSpec{1, 0, {}});
  int r = p.AddConstraint(1.0);
  p.AddFree(r, 0, 1.0);
  r = p.AddConstraint(2.0);
  p.AddFree(r, 0, 1.0);
  EXPECT_EQ(Solve(p).status, SdpStatus::kInfeasible);
}

// Same LP with offsets scaled by 3: optimum scales to 8.4; weak duality holds.
TEST(Solve, HomogeneousInOffsetsAndWeakDuality) {
  for (double alpha : {1.0, 3.0}) {
    SdpProblem p(ConeSpec{0, 4, {}});
    int r = p.AddConstraint(4.0 * alpha);
    p.AddNonneg(r, 0, 1.0);
    p.AddNonneg(r, 1, 2.0);
    p.AddNonneg(r, 2, 1.0);
    r = p.AddConstraint(6.0 * alpha);
    p.AddNonneg(r, 0, 3.0);
    p.AddNonneg(r, 1, 1.0);
    p.AddNonneg(r, 3, 1.0);
    p.AddNonneg(SdpProblem::kObjective, 0, 1.0);
    p.AddNonneg(SdpProblem::kObjective, 1, 1.0);
    const SdpSolution s = Solve(p);
    ASSERT_EQ(s.status, SdpStatus::kOptimal);
    EXPECT_NEAR(s.objective, 2.8 * alpha, 1e-6 * alpha);
    EXPECT_LE(s.objective, s.dual_objective + 10 * 1e-8 * (1 + std::abs(s.objective)));
  }
}

TEST(Solve, Deterministic) {
  SdpProblem p(ConeSpec{0, 0, {3}});
  const int r = p.AddConstraint(1.0);
  p.AddBlock(r, 0, Matrix::Identity(3, 3));
  p.AddEntry(SdpProblem::kObjective, 0, 0, 1, 1.0);
  const SdpSolution a = Solve(p);
  const SdpSolution b = Solve(p);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.blocks[0], b.blocks[0]);
}
