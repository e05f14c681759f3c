#pragma once

#include <optional>

#include "contain/certificate.h"
#include "contain/criteria.h"
#include "contain/pencil.h"

namespace contain {

struct ScalingResult {
  double nu_star = 0.0;
  Variant variant = Variant::kExact;
  // Certificate for Scale(A, nu_star) in B.
  std::optional<ChoiCertificate> certificate;
  std::optional<VerifyReport> verify;
  // The system at nu_star + confirm_step was found infeasible.
  bool confirmed_upper = false;
  double confirm_step = 1e-4;
  int iterations = 0;
  bool heuristic = false;
};

// Largest nu such that the chosen criterion certifies nu * S_A in S_B. One
// SDP with nu as a free variable, followed by a confirming solve at
// nu* + 1e-4. Both pencils must be monic.
ScalingResult MaxScale(const LinearPencil& a, const LinearPencil& b,
                       Variant variant, const CriteriaOptions& opts = {});

struct CircumradiusResult {
  double radius = 0.0;
  double nu_star = 0.0;
  std::optional<ChoiCertificate> certificate;
};

// Smallest radius r such that the exact criterion certifies S_A inside the
// ball of radius r, i.e. 1 / nu* for the unit ball as outer set.
CircumradiusResult HkmCircumradius(const LinearPencil& a,
                                   const CriteriaOptions& opts = {});

// 2 / (pi sqrt(mu)).
double BnBound(int mu);

}  // namespace contain
