#pragma once

#include <functional>

#include "madmm/prox.hpp"
#include "madmm/smooth_solver.hpp"
#include "madmm/trace.hpp"

namespace madmm {

// Coupling map A taking a manifold point to the matrix the nonsmooth term
// sees. `adjoint` is the adjoint of the differential of `apply` at the given
// point; for a truly linear map it ignores the point.
struct LinearOperator {
  std::function<Matrix(const Point&)> apply;
  std::function<FactorList(const Point&, const Matrix&)> adjoint;
  Eigen::Index out_rows = 0;
  Eigen::Index out_cols = 0;
};

// min_{X in M} f(X) + g(A X), split as f(X) + g(Z) subject to A X = Z.
struct SplitProblem {
  Manifold manifold;
  std::function<double(const Point&)> smooth_cost;      // f; empty means 0
  std::function<FactorList(const Point&)> smooth_grad;  // grad f; empty means 0
  LinearOperator op;
  ProxFn prox_g;                                // Z-step, threshold 1/rho
  std::function<double(const Matrix&)> g_value; // g on a matrix, for tracing
};

struct MadmmOptions {
  double rho = 1.0;
  int max_outer = 100;

  // The X-step is solved inexactly: a handful of warm-started manifold
  // descent iterations per outer pass.
  int inner_iters = 4;
  DescentMethod inner_method = DescentMethod::ConjugateGradient;

  // Negative means the default 1e-6 * sqrt(#entries of Z).
  double primal_tol = -1.0;

  // Relative objective change over the trailing 5 outer iterations; both this
  // and the primal tolerance must hold to stop early.
  double obj_rel_tol = 1e-8;
};

struct MadmmState {
  Point x;
  Matrix z;
  Matrix u;
  int outer = 0;
  double rho = 0.0;
};

using MadmmIterCallback = std::function<void(const MadmmState&)>;

struct MadmmResult {
  Point x;
  Matrix z;
  Matrix u;
  ConvergenceTrace trace;
  int outer_iterations = 0;
};

// Alternating-direction splitting over a manifold: a smooth augmented X-step
// on M, a proximal Z-step, and a dual ascent U-step, starting from
// Z = A x0 and U = 0. Throws NumericalError if an iterate stops being finite.
MadmmResult madmm_solve(const SplitProblem& problem, const Point& x0,
                        const MadmmOptions& opts,
                        const MadmmIterCallback& on_iteration = {});

}  // namespace madmm
