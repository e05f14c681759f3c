#include <gtest/gtest.h>

#include "contain/certificate.h"
#include "contain/criteria.h"
#include "contain/errors.h"
#include "contain/generators.h"
#include "support/audit.h"

using namespace contain;
using contain_test::AuditedCertificate;

namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

HPolyhedron Interval(double r) {
  Matrix normals(2, 1);
  normals << 1.0 / r, -1.0 / r;
  return HPolyhedron(Vector::Ones(2), normals);
}

}  // namespace

TEST(Identity, VerifiesForAnyPencil) {
  const LinearPencil a = GenRandomSpectrahedron(2, 3, 4, false);
  const ChoiCertificate c = IdentityCertificate(a.k());
  const VerifyReport r = Verify(c, a, a);
  EXPECT_TRUE(r.ok) << r.message;
  EXPECT_EQ(r.max_equality_residual, 0.0);
}

TEST(AnalyticEllipsoid, EntriesAndResidual) {
  const Vector a = V({1, 2});
  const Vector b = V({2, 4});
  const ChoiCertificate c = AnalyticEllipsoid(a, b);
  ASSERT_EQ(c.k, 3);
  // d = a / b = (1/2, 1/2), d_n = 1.
  EXPECT_DOUBLE_EQ(c.C(0, 4), 0.25);
  EXPECT_DOUBLE_EQ(c.C(0, 8), 0.5);
  EXPECT_DOUBLE_EQ(c.C(8, 8), 1.0);
  EXPECT_DOUBLE_EQ(c.C(4, 4), 1.0);
  const VerifyReport r = Verify(c, EllipsoidPencil(a), EllipsoidPencil(b), 1e-9);
  EXPECT_TRUE(r.ok);
  EXPECT_LE(r.max_equality_residual, 1e-12);
  EXPECT_THROW(AnalyticEllipsoid(b, a), ContainmentFalse);
}

TEST(AnalyticBall, VerifiesAndRejects) {
  const HPolyhedron cube = *AsHPolyhedron(CubePencil(2, 1.0));
  const ChoiCertificate c = AnalyticBallInPolyhedron(1.0, cube);
  EXPECT_TRUE(AuditedCertificate(c, BallPencil(2, 1.0), DiagonalPencil(cube)));
  // For row s = 0, b_0 = (1, 0): corner entry 1 - r^2/2 |b_0|^2 = 1/2.
  EXPECT_DOUBLE_EQ(c.C(2 * 4 + 0, 2 * 4 + 0), 0.5);
  try {
    AnalyticBallInPolyhedron(1.5, cube);
    FAIL() << "expected ContainmentFalse";
  } catch (const ContainmentFalse& e) {
    EXPECT_GE(e.index(), 0);
  }
}

TEST(AnalyticHInH, StochasticDiagonal) {
  Matrix s(2, 2);
  s << 0.75, 0.25, 0.25, 0.75;
  const ChoiCertificate c = AnalyticHInH(s);
  EXPECT_DOUBLE_EQ(c.C(0, 0), 0.75);
  EXPECT_TRUE(AuditedCertificate(c, DiagonalPencil(Interval(1)), DiagonalPencil(Interval(2))));
  EXPECT_FALSE(Verify(c, DiagonalPencil(Interval(2)), DiagonalPencil(Interval(1))).ok);
}

TEST(Verify, DetectsTampering) {
  ChoiCertificate c = AnalyticEllipsoid(V({1}), V({2}));
  const LinearPencil a = EllipsoidPencil(V({1}));
  const LinearPencil b = EllipsoidPencil(V({2}));
  ASSERT_TRUE(Verify(c, a, b).ok);
  ChoiCertificate bad = c;
  bad.C(0, 0) += 1e-3;
  EXPECT_FALSE(Verify(bad, a, b).ok);
  ChoiCertificate indefinite = c;
  indefinite.C(0, 3) = indefinite.C(3, 0) = 5.0;
  EXPECT_FALSE(Verify(indefinite, a, b).ok);
  EXPECT_THROW(Verify(c, BallPencil(2, 1), b), DimensionError);
}

TEST(Verify, RelaxedSlackMustBePsd) {
  const DiscPair d = GenDiscPair();
  const ContainmentVerdict v = CheckHkm(Scale(d.a, 0.7), d.b, Variant::kRelaxed);
  ASSERT_TRUE(v.certificate.has_value());
  ASSERT_EQ(v.certificate->slacks.size(), 1u);
  EXPECT_TRUE(Verify(*v.certificate, Scale(d.a, 0.7), d.b).ok);
  ChoiCertificate bad = *v.certificate;
  bad.slacks[0](0, 0) -= 1.0;
  EXPECT_FALSE(Verify(bad, Scale(d.a, 0.7), d.b).ok);
}

TEST(Compose, ExactChainStaysExact) {
  const ChoiCertificate de = AnalyticEllipsoid(V({0.5, 1}), V({1, 1.5}));
  const ChoiCertificate ef = AnalyticEllipsoid(V({1, 1.5}), V({2, 2}));
  const ChoiCertificate df = Compose(de, ef);
  EXPECT_EQ(df.variant, Variant::kExact);
  EXPECT_EQ(df.provenance, Provenance::kComposed);
  const VerifyReport r = Verify(df, EllipsoidPencil(V({0.5, 1})), BallPencil(2, 2), 1e-9);
  EXPECT_TRUE(r.ok) << r.message;
}

TEST(Compose, VariantRules) {
  const LinearPencil d = CubePencil(2, 0.3);
  const LinearPencil e = CubePencil(2, 0.5);
  const LinearPencil f = BallPencil(2, 1.0);
  const ContainmentVerdict de = CheckHkm(d, e, Variant::kRelaxed);
  const ContainmentVerdict ef = CheckHkm(e, f, Variant::kExact);
  const ContainmentVerdict ef_pos = CheckHkm(e, f, Variant::kPositive);
  ASSERT_TRUE(de.certificate && ef.certificate && ef_pos.certificate);
  const ChoiCertificate relaxed = Compose(*de.certificate, *ef.certificate);
  EXPECT_EQ(relaxed.variant, Variant::kRelaxed);
  EXPECT_TRUE(AuditedCertificate(relaxed, d, f));
  const ChoiCertificate positive = Compose(*de.certificate, *ef_pos.certificate);
  EXPECT_EQ(positive.variant, Variant::kPositive);
  EXPECT_TRUE(AuditedCertificate(positive, d, f));
  EXPECT_THROW(Compose(*ef.certificate, *de.certificate), DimensionError);
}

TEST(Compose, Associative) {
  const ChoiCertificate ab = AnalyticEllipsoid(V({0.2}), V({0.4}));
  const ChoiCertificate bc = AnalyticEllipsoid(V({0.4}), V({0.9}));
  const ChoiCertificate cd = AnalyticEllipsoid(V({0.9}), V({1.0}));
  const ChoiCertificate left = Compose(Compose(ab, bc), cd);
  const ChoiCertificate right = Compose(ab, Compose(bc, cd));
  EXPECT_LT((left.C - right.C).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Blocks, ContiguousStructure) {
  const LinearPencil b = DirectSum({BallPencil(2, 1.0), CubePencil(2, 1.0)});
  const std::vector<int> sizes = ContiguousBlocks(b);
  EXPECT_EQ(sizes, (std::vector<int>{3, 1, 1, 1, 1}));
  EXPECT_EQ(ContiguousBlocks(GenDiscPair().a), std::vector<int>{3});
}

TEST(Blocks, SplitThenJoin) {
  const LinearPencil a = EllipsoidPencil(V({0.3, 0.4}));
  const LinearPencil b = DirectSum({BallPencil(2, 1.0), CubePencil(2, 0.8)});
  const ContainmentVerdict v = CheckHkm(a, b, Variant::kExact);
  ASSERT_TRUE(v.certificate.has_value());
  const std::vector<int> sizes = ContiguousBlocks(b);
  const std::vector<ChoiCertificate> parts = SplitBlocks(*v.certificate, sizes);
  ASSERT_EQ(parts.size(), sizes.size());
  for (size_t q = 0; q < parts.size(); ++q) {
    const VerifyReport r = Verify(parts[q], a, PencilBlock(b, sizes, static_cast<int>(q)), 1e-8);
    EXPECT_TRUE(r.ok) << "block " << q << ": " << r.message;
  }
  const ChoiCertificate joined = JoinBlocks(parts);
  EXPECT_EQ(joined.provenance, Provenance::kBlockJoined);
  EXPECT_TRUE(AuditedCertificate(joined, a, b));
  // Cross-block couplings are zero after joining.
  EXPECT_EQ(joined.Block(0, 0)(0, 4), 0.0);
}

TEST(Names, RoundTrip) {
  for (Variant v : {Variant::kExact, Variant::kRelaxed, Variant::kPositive}) {
    EXPECT_EQ(ParseVariant(ToString(v)), v);
  }
  EXPECT_EQ(ParseVariant("hkm-positive"), Variant::kPositive);
  EXPECT_EQ(ParseProvenance(ToString(Provenance::kAnalyticLp)), Provenance::kAnalyticLp);
  EXPECT_THROW(ParseVariant("loose"), UsageError);
}

TEST(Compose, IdentityIsNeutral) {
  const LinearPencil a = CubePencil(2, 0.5);
  const LinearPencil b = BallPencil(2, 1.0);
  const ContainmentVerdict v = CheckHkm(a, b, Variant::kExact);
  ASSERT_TRUE(v.certificate.has_value());
  const ChoiCertificate left = Compose(IdentityCertificate(a.k()), *v.certificate);
  const ChoiCertificate right = Compose(*v.certificate, IdentityCertificate(b.k()));
  EXPECT_LT((left.C - v.certificate->C).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((right.C - v.certificate->C).cwiseAbs().maxCoeff(), 1e-12);
}
