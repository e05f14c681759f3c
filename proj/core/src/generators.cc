#include "contain/generators.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <string>

#include "contain/errors.h"

namespace contain {

void ValidateSat3(const Sat3Instance& phi) {
  if (phi.n < 1) throw UsageError("3-SAT instance needs n >= 1");
  for (const auto& c : phi.clauses) {
    if (c.empty() || c.size() > 3) {
      throw UsageError("clauses must have between one and three literals");
    }
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > phi.n) {
        throw UsageError("literal " + std::to_string(lit) + " out of range");
      }
    }
  }
}

bool BruteForceSatisfiable(const Sat3Instance& phi) {
  ValidateSat3(phi);
  if (phi.n > 30) throw UsageError("brute force limited to n <= 30");
  const std::uint64_t total = std::uint64_t{1} << phi.n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool all = true;
    for (const auto& c : phi.clauses) {
      bool sat = false;
      for (int lit : c) {
        const bool value = (mask >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == value) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Sat3Reduction GenSat3Reduction(const Sat3Instance& phi) {
  ValidateSat3(phi);
  const int n = phi.n;
  if (n < 2) throw UsageError("reduction needs n >= 2 for a valid radius");
  std::vector<Vector> rows;
  std::vector<double> offs;
  for (int p = 0; p < n; ++p) {
    Vector e = Vector::Zero(n);
    e(p) = 1.0;
    rows.push_back(e);
    offs.push_back(1.0);
    rows.push_back(-e);
    offs.push_back(1.0);
  }
  for (const auto& c : phi.clauses) {
    std::set<int> lits(c.begin(), c.end());
    bool tautology = false;
    for (int lit : lits) {
      if (lits.count(-lit)) tautology = true;
    }
    if (tautology) continue;
    Vector row = Vector::Zero(n);
    for (int lit : lits) row(std::abs(lit) - 1) = lit > 0 ? 1.0 : -1.0;
    rows.push_back(row);
    offs.push_back(static_cast<double>(lits.size()) - 2.0);
  }
  Matrix normals(static_cast<int>(rows.size()), n);
  Vector b(static_cast<int>(rows.size()));
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    normals.row(i) = rows[i].transpose();
    b(i) = offs[i];
  }
  Sat3Reduction red;
  red.polytope = HPolyhedron(b, normals);
  const double lo = 1.0 / 36.0 + std::pow(std::sqrt(n) - 1.0 / 6.0, 2);
  red.radius_sq = 0.5 * (lo + n);
  red.ball = BallPencil(n, std::sqrt(red.radius_sq));
  return red;
}

bool VertexContainment(const Sat3Reduction& red) {
  const Matrix v = EnumerateVertices(red.polytope);
  for (int i = 0; i < v.rows(); ++i) {
    if (v.row(i).squaredNorm() > red.radius_sq) return false;
  }
  return true;
}

LinearPencil GenCube(int n, double r) { return CubePencil(n, r); }

DiscPair GenDiscPair() {
  DiscPair d;
  Matrix a1 = Matrix::Zero(3, 3);
  a1(0, 2) = a1(2, 0) = 1.0;
  Matrix a2 = Matrix::Zero(3, 3);
  a2(1, 2) = a2(2, 1) = 1.0;
  d.a = LinearPencil({SymMatrix::Identity(3), SymMatrix(a1), SymMatrix(a2)});
  Matrix b1(2, 2);
  b1 << 1, 0, 0, -1;
  Matrix b2(2, 2);
  b2 << 0, 1, 1, 0;
  d.b = LinearPencil({SymMatrix::Identity(2), SymMatrix(b1), SymMatrix(b2)});
  return d;
}

LinearPencil GenRandomSpectrahedron(int n, int k, std::uint64_t seed, bool bounded) {
  if (n < 1 || k < 1) throw UsageError("random spectrahedron needs n, k >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const double target = 1.0 / std::max(1.0, 0.1 * std::sqrt(static_cast<double>(n)));
  std::vector<SymMatrix> mats{SymMatrix::Identity(k)};
  for (int p = 0; p < n; ++p) {
    Matrix g(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) g(i, j) = gauss(rng);
    }
    Matrix s = 0.5 * (g + g.transpose());
    const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(s, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
    if (norm > 0.0) s *= target / norm;
    mats.emplace_back(s);
  }
  LinearPencil a(std::move(mats));
  if (bounded) return DirectSum({a, CubePencil(n, 10.0)});
  return a;
}

HPolyhedron GenRandomPolytope(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < n + 1) throw UsageError("random polytope needs m >= n + 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix normals(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) normals(i, j) = gauss(rng);
    }
    HPolyhedron h(Vector::Ones(m), normals);
    if (IsBounded(FromHPolyhedron(h))) return h;
  }
  throw NumericalFailure("random polytope: no bounded sample in 1000 attempts");
}

}  // namespace contain
