#pragma once

#include <cstdint>
#include <vector>

#include "contain/pencil.h"

namespace contain {

// Literals are +i for z_i and -i for its complement, i in 1..n.
struct Sat3Instance {
  int n = 0;
  std::vector<std::vector<int>> clauses;
};

// Throws UsageError on empty clauses, more than three literals or indices
// outside 1..n.
void ValidateSat3(const Sat3Instance& phi);

// Exhaustive search over all 2^n assignments.
bool BruteForceSatisfiable(const Sat3Instance& phi);

struct Sat3Reduction {
  HPolyhedron polytope;  // [-1,1]^n cut by one inequality per clause
  LinearPencil ball;
  double radius_sq = 0.0;
};

// polytope inside ball iff phi is unsatisfiable. A clause with j distinct
// literals becomes sum (-1)^e x <= j - 2, where e = 1 for z_i and 0 for its
// complement; clauses with a complementary pair are dropped. r^2 is the
// midpoint of ((1/6)^2 + (sqrt(n) - 1/6)^2, n).
Sat3Reduction GenSat3Reduction(const Sat3Instance& phi);

// Containment of the reduction by vertex enumeration; an empty polytope
// counts as contained.
bool VertexContainment(const Sat3Reduction& red);

LinearPencil GenCube(int n, double r);

struct DiscPair {
  LinearPencil a;  // 3x3 arrowhead pencil of the unit disc
  LinearPencil b;  // 2x2 pencil of the unit disc
};
DiscPair GenDiscPair();

// Monic pencil with Gaussian symmetric A_p, each scaled to spectral norm
// 1 / max(1, 0.1 sqrt(n)) so that the ball of radius 0.1 lies inside. When
// bounded, the cube [-10, 10]^n is added as a direct summand.
LinearPencil GenRandomSpectrahedron(int n, int k, std::uint64_t seed, bool bounded);

// Normal-form polytope with m Gaussian normals, resampled until bounded.
HPolyhedron GenRandomPolytope(int n, int m, std::uint64_t seed);

}  // namespace contain
