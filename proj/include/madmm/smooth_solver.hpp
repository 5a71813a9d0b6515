#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "madmm/manifolds.hpp"

namespace madmm {

// Smooth cost on a manifold, given by value and Euclidean gradient handles.
// The solver projects the Euclidean gradient itself.
struct SmoothProblem {
  Manifold manifold;
  std::function<double(const Point&)> cost;
  std::function<FactorList(const Point&)> euclidean_grad;
};

enum class DescentMethod { GradientDescent, ConjugateGradient };

struct SolverOptions {
  DescentMethod method = DescentMethod::ConjugateGradient;
  int max_iters = 100;
  double grad_tol = 1e-6;

  // Armijo backtracking. Each iteration starts from twice the previously
  // accepted step, capped at 1.
  double ls_initial_step = 1.0;
  double ls_contraction = 0.5;
  double ls_sufficient_decrease = 1e-4;
  int max_ls_halvings = 50;

  double max_seconds = std::numeric_limits<double>::infinity();

  // Invoked with (iteration, point, cost, Riemannian gradient norm);
  // iteration 0 is the starting point, then once per accepted step.
  std::function<void(int, const Point&, double, double)> on_iteration;
};

struct SolveResult {
  Point x;
  int iterations = 0;
  double grad_norm = 0.0;
  double cost = 0.0;
  // Set when the line search failed max_ls_halvings times; x is the last
  // iterate and is still usable.
  bool stalled = false;
};

// Riemannian descent: steepest descent or Polak-Ribiere+ conjugate gradients
// with the previous direction transported by tangent projection.
SolveResult solve(const SmoothProblem& problem, const Point& x0, const SolverOptions& opts);

// Worst relative error between <euclidean_grad, T> and a central finite
// difference of cost(retract(x, hT)) over random unit tangent directions.
// Both quantities below 1e-12 in magnitude count as a relative error of 0.
double fd_check(const SmoothProblem& problem, const Point& x, double h,
                int directions = 10, std::uint64_t seed = 91);

}  // namespace madmm
