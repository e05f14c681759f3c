#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "contain/linalg.h"

namespace contain {

// Variable cone: free scalars x Nonnegative scalars x PSD blocks.
struct ConeSpec {
  int free = 0;
  int nonneg = 0;
  std::vector<int> psd;
};

// Linear conic program over the cone described by ConeSpec:
//
//   maximize   <c, X>
//   subject to <F_i, X> = g_i,   i = 0..m-1,
//              X in K.
//
// The variable X is stored vectorized: free scalars, then nonnegative
// scalars, then every PSD block in scaled half-vectorized form (see Svec).
// The dual reported by Solve is
//
//   minimize g^T y  subject to  sum_i y_i F_i - c in K*.
class SdpProblem {
 public:
  // Pass as the row argument to address the objective instead of a constraint.
  static constexpr int kObjective = -1;

  explicit SdpProblem(ConeSpec cone);

  const ConeSpec& cone() const { return cone_; }
  int num_vars() const { return num_vars_; }
  int num_constraints() const { return static_cast<int>(rhs_.size()); }

  int AddConstraint(double rhs);
  void SetRhs(int row, double rhs);

  void AddFree(int row, int index, double coef);
  void AddNonneg(int row, int index, double coef);
  // Adds coef * X_block(i, j); (i, j) and (j, i) address the same variable.
  void AddEntry(int row, int block, int i, int j, double coef);
  // Adds <f, X_block> for a symmetric f.
  void AddBlock(int row, int block, const Matrix& f);
  // Adds coef at a raw position of the vectorized variable.
  void AddVectorCoef(int row, int index, double coef);

  // Offset of a PSD block inside the vectorized variable.
  int BlockOffset(int block) const;
  int SvecIndex(int block, int i, int j) const;

  Matrix ConstraintMatrix() const;
  Vector Rhs() const;
  Vector Objective() const;

 private:
  void AddCoef(int row, int index, double coef);

  ConeSpec cone_;
  std::vector<int> block_offset_;
  int num_vars_ = 0;
  std::vector<double> rhs_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<std::pair<int, double>> objective_;
};

enum class SdpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

const char* ToString(SdpStatus status);

struct SdpOptions {
  double feas_tol = 1e-8;
  int max_iter = 200;
  // When non-null, one line per iteration: iter, mu, residuals, step.
  std::ostream* trace = nullptr;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;

  Vector free;
  Vector nonneg;
  std::vector<Matrix> blocks;
  Vector x;  // vectorized primal point

  Vector dual;  // y
  double objective = 0.0;       // <c, X>
  double dual_objective = 0.0;  // g^T y

  // Set when status == kInfeasible: sum_i ray_i F_i in K* and g^T ray = -1.
  Vector farkas_ray;
  double ray_residual = 0.0;

  // Set when status == kUnbounded: feasible direction D with A(D) ~ 0,
  // D in K and <c, D> = 1.
  Vector unbounded_direction;

  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;

  // Phase-I margin (SolveFeasibility only): largest t with X - t*E in K,
  // capped at 1. E is the identity on PSD blocks and ones on nonneg scalars.
  double margin = 0.0;

  std::string message;
};

// Primal-dual interior-point method on the homogeneous self-dual embedding,
// with Nesterov-Todd scaling and Mehrotra predictor-corrector steps.
// Deterministic for fixed inputs and options.
SdpSolution Solve(const SdpProblem& problem, const SdpOptions& options = {});

// Phase-I feasibility: maximize t subject to the constraints of `problem`
// and X - t*E in K, t <= 1. The objective of `problem` is ignored.
// Feasible (kOptimal) iff the optimal margin is >= -feas_tol; otherwise
// kInfeasible with the phase-I dual as a Farkas ray.
SdpSolution SolveFeasibility(const SdpProblem& problem,
                             const SdpOptions& options = {});

}  // namespace contain
