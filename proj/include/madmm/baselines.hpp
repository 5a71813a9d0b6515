#pragma once

#include "madmm/funcorr.hpp"
#include "madmm/ree.hpp"

namespace madmm {

// Reference methods the splitting solvers are compared against. Both emit the
// shared trace schema; the `objective` column always holds the true
// (unsmoothed) objective so curves overlay directly.

// Smooth surrogate of the columnwise 2,1-norm:
// sum_j sqrt(sum_i a_ij^2 + epsilon).
double smoothed_l21(const Matrix& a, double epsilon);

struct SmoothedL21Options {
  double epsilon = 1e-2;
  SolverOptions solver;  // plain Riemannian descent budget, no splitting
};

// The correspondence cost with every pairwise 2,1-norm replaced by its
// epsilon-smoothed surrogate, as a smooth manifold problem. Exposed for
// gradient verification.
SmoothProblem smoothed_funcorr_problem(const CorrespondenceProblem& prob, double epsilon);

// Riemannian conjugate gradients on the smoothed cost, started at X_i = I.
// Trace objective is the true (unsmoothed) value; the augmented-cost column
// carries the smoothed cost actually being minimized.
FuncorrResult smoothed_l21_solve(const CorrespondenceProblem& prob,
                                 const SmoothedL21Options& opts);

struct SubgradientOptions {
  double c = 1e-3;  // step t uses c / t^schedule_exponent
  double schedule_exponent = 0.5;
  int max_iters = 500;
};

struct SubgradientResult {
  Matrix embedding;
  ConvergenceTrace trace;
  // Set when the objective exceeded 10x its initial value; iteration stops.
  bool diverged = false;
};

// Euclidean subgradient descent on ||D - dist(YY')||_1 over the factor Y,
// started from classical MDS: Y <- Y - (c / sqrt(t)) * 2 dist_adjoint(S) Y
// with S = sign(dist(YY') - D) and sign(0) = 0.
SubgradientResult ree_subgradient(const Matrix& d, Eigen::Index k,
                                  const SubgradientOptions& opts);

}  // namespace madmm
