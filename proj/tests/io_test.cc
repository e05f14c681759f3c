#include <gtest/gtest.h>

#include "contain/errors.h"
#include "contain/generators.h"
#include "contain/io.h"

using namespace contain;

TEST(PencilJson, RoundTrip) {
  const LinearPencil a = GenRandomSpectrahedron(2, 3, 8, true);
  const LinearPencil b = PencilFromJson(PencilToJson(a));
  ASSERT_EQ(b.n(), a.n());
  for (int p = 0; p <= a.n(); ++p) EXPECT_EQ(b.mat(p), a.mat(p));
}

TEST(PencilJson, Rejections) {
  EXPECT_THROW(PencilFromJson(R"({"n": 1, "k": 2, "mats": [[1,0,0,1],[0,1,2,0]]})"), ParseError);
  EXPECT_THROW(PencilFromJson(R"({"n": 1, "k": 2, "mats": [[1,0,0,1]]})"), ParseError);
  EXPECT_THROW(PencilFromJson(R"({"k": 2})"), ParseError);
  try {
    PencilFromJson("{\"n\": 1,\n \"k\": ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(BodyJson, AllKinds) {
  const HPolyhedron h = GenRandomPolytope(2, 4, 3);
  const Body hb = BodyFromJson(BodyToJson(h));
  ASSERT_TRUE(std::holds_alternative<HPolyhedron>(hb));
  EXPECT_EQ(std::get<HPolyhedron>(hb).normals, h.normals);
  Matrix v(3, 2);
  v << 0, 0, 1, 0, 0, 1;
  const Body vb = BodyFromJson(BodyToJson(VPolytope(v)));
  EXPECT_EQ(std::get<VPolytope>(vb).vertices, v);
  EXPECT_TRUE(std::holds_alternative<LinearPencil>(BodyFromJson(BodyToJson(BallPencil(2, 1)))));
  EXPECT_THROW(BodyFromJson(R"({"type": "cone"})"), ParseError);
}

TEST(CertificateJson, RoundTrip) {
  Vector a(2), b(2);
  a << 1, 1;
  b << 2, 3;
  const ChoiCertificate c = AnalyticEllipsoid(a, b);
  const ChoiCertificate d = CertificateFromJson(CertificateToJson(c));
  EXPECT_EQ(d.k, c.k);
  EXPECT_EQ(d.l, c.l);
  EXPECT_EQ(d.C, c.C);
  EXPECT_EQ(d.variant, c.variant);
  EXPECT_EQ(d.provenance, Provenance::kAnalyticEllipsoid);
  EXPECT_TRUE(Verify(d, EllipsoidPencil(a), EllipsoidPencil(b), 1e-9).ok);
  EXPECT_THROW(CertificateFromJson(R"({"k":1,"l":1,"variant":"odd","C":[1]})"), ParseError);
}
