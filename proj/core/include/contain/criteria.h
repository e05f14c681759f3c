#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "contain/certificate.h"
#include "contain/pencil.h"
#include "contain/sdp.h"

namespace contain {

enum class VerdictKind { kContained, kNotContained, kInconclusive };

const char* ToString(VerdictKind k);

struct CriteriaOptions {
  double feas_tol = 1e-8;
  double cert_tol = kCertificateTol;
  // Facet test: r_q <= c_q + facet_tol * (1 + |c_q|).
  double facet_tol = 1e-7;
  int max_iter = 200;
  // Falsification budget: +-e_p first, then this many Gaussian directions.
  int directions = 256;
  std::uint64_t seed = 0;
  // Points drawn for the sampled symmetry fallback.
  int symmetry_samples = 500;
  std::ostream* trace = nullptr;

  SdpOptions sdp() const { return SdpOptions{feas_tol, max_iter, trace}; }
};

struct ContainmentVerdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  std::optional<ChoiCertificate> certificate;
  std::optional<Vector> witness;
  // hkm, hkm-relaxed, hkm-positive, vertices, lp, facets, sampling.
  std::string method;
  // Contained by an exact method that produces no certificate object.
  bool exact_method = false;
  // The symmetry precondition of the positive variant was established only by
  // sampling.
  bool heuristic = false;
  // Inconclusive because the solver did not converge.
  bool numerical_failure = false;
  std::string reason;
  // Phase-I margins and similar diagnostics, keyed by criterion.
  std::map<std::string, double> margins;
  std::optional<VerifyReport> verify;
  // Pencils the certificate refers to (after any normalization, translation
  // or extension applied by the method).
  std::optional<LinearPencil> cert_inner;
  std::optional<LinearPencil> cert_outer;
  int iterations = 0;
  std::uint64_t seed = 0;
};

// The Choi system as a conic program. Block 0 is C (size kl); relaxed adds a
// slack block for p = 0 and positive adds slack blocks for every p. When
// with_scale is set, a free variable nu multiplies B_p for p >= 1 and the
// objective maximizes nu.
struct HkmSystem {
  int n = 0;
  int k = 0;
  int l = 0;
  Variant variant = Variant::kExact;
  bool with_scale = false;
  SdpProblem problem{ConeSpec{}};
};

HkmSystem BuildHkmSystem(const LinearPencil& a, const LinearPencil& b,
                         Variant variant, bool with_scale = false);

// Certificate from a solved system. The slacks are recomputed from C.
ChoiCertificate ExtractCertificate(const HkmSystem& sys,
                                   const SdpSolution& sol,
                                   const LinearPencil& a,
                                   const LinearPencil& b);

struct PositivePrecondition {
  bool ok = false;
  bool heuristic = false;
  std::string reason;
};

// Structural test for a signed permutation P with P A_q P^T = A_q for q != p
// and P A_p P^T = -A_p, for every coordinate p. Falls back to sampled
// membership symmetry when the search is too large; `heuristic` reports that.
struct SymmetryReport {
  bool symmetric = false;
  bool heuristic = false;
  std::string detail;
};
SymmetryReport CheckReflectionSymmetry(const LinearPencil& a,
                                       const CriteriaOptions& opts = {});

// S_A in the nonnegative orthant, or both S_A and S_B reflection symmetric in
// every coordinate hyperplane.
PositivePrecondition CheckPositivePrecondition(const LinearPencil& a,
                                               const LinearPencil& b,
                                               const CriteriaOptions& opts = {});

// Solves the Choi system. Contained only with a verified certificate;
// never NotContained.
ContainmentVerdict CheckHkm(const LinearPencil& a, const LinearPencil& b,
                            Variant variant, const CriteriaOptions& opts = {});

using Body = std::variant<VPolytope, HPolyhedron, LinearPencil>;

int Dimension(const Body& body);
bool BodyContains(const Body& body, const Vector& x, double tol = kDefaultPsdTol);

// Every vertex of v inside the outer body.
ContainmentVerdict CheckVertices(const VPolytope& v, const Body& outer,
                                 const CriteriaOptions& opts = {});

// Both in normal form. LP for a row-stochastic C with B = C A (extended form
// if the plain one is infeasible).
ContainmentVerdict CheckHInH(const HPolyhedron& p, const HPolyhedron& q,
                             const CriteriaOptions& opts = {});

// Per-facet support values of S_A. Exact. Attaches a certificate assembled
// from the per-facet duals when S_A is bounded.
ContainmentVerdict CheckSInH(const LinearPencil& a, const HPolyhedron& q,
                             const CriteriaOptions& opts = {});

// Boundary-ray search for x in the inner set but outside the outer body.
// The inner pencil needs A_0 positive definite.
std::optional<Vector> Falsify(const LinearPencil& a, const Body& outer,
                              const CriteriaOptions& opts = {});

ContainmentVerdict DecideAuto(const Body& inner, const Body& outer,
                              const CriteriaOptions& opts = {});

// Soundness audit: a Contained verdict with a certificate must verify
// against the pencils of inner and outer; a NotContained witness must lie in
// inner and outside outer. Returns false with a reason otherwise.
bool AuditVerdict(const ContainmentVerdict& v, const Body& inner,
                  const Body& outer, std::string* why = nullptr,
                  double tol = kCertificateTol);

}  // namespace contain
