#include "madmm/smooth_solver.hpp"

#include <cmath>

#include "madmm/rng.hpp"
#include "madmm/trace.hpp"

namespace madmm {

namespace {

void validate(const SmoothProblem& p, const SolverOptions& o) {
  if (!p.cost || !p.euclidean_grad)
    throw std::invalid_argument("solve: cost and euclidean_grad are required");
  if (o.max_iters < 1) throw std::invalid_argument("solve: max_iters must be >= 1");
  if (!(o.grad_tol >= 0.0)) throw std::invalid_argument("solve: grad_tol must be >= 0");
  if (!(o.ls_contraction > 0.0 && o.ls_contraction < 1.0))
    throw std::invalid_argument("solve: ls_contraction must lie in (0, 1)");
  if (!(o.ls_sufficient_decrease > 0.0 && o.ls_sufficient_decrease < 1.0))
    throw std::invalid_argument("solve: ls_sufficient_decrease must lie in (0, 1)");
  if (!(o.ls_initial_step > 0.0))
    throw std::invalid_argument("solve: ls_initial_step must be > 0");
  if (o.max_ls_halvings < 1)
    throw std::invalid_argument("solve: max_ls_halvings must be >= 1");
}

}  // namespace

SolveResult solve(const SmoothProblem& p, const Point& x0, const SolverOptions& opts) {
  validate(p, opts);
  p.manifold.require_point_shapes(x0);

  Stopwatch clock;
  Point x = x0;
  double fx = p.cost(x);
  Tangent grad = p.manifold.riemannian_grad(x, p.euclidean_grad(x));
  double grad_norm_sq = p.manifold.inner(x, grad, grad);
  double grad_norm = std::sqrt(std::max(0.0, grad_norm_sq));

  Tangent prev_grad, prev_dir;
  double prev_grad_norm_sq = 0.0;
  bool have_prev = false;
  double prev_step = opts.ls_initial_step;
  bool stalled = false;
  int iters = 0;

  if (opts.on_iteration) opts.on_iteration(0, x, fx, grad_norm);

  for (int k = 1; k <= opts.max_iters; ++k) {
    iters = k;
    if (grad_norm <= opts.grad_tol) break;
    if (clock.seconds() >= opts.max_seconds) break;

    // Search direction: steepest descent, or PR+ conjugate gradients with the
    // previous gradient/direction moved to the current tangent space by
    // projection. Fall back to steepest descent whenever the combination
    // stops being a descent direction.
    Tangent dir = -1.0 * grad;
    if (opts.method == DescentMethod::ConjugateGradient && have_prev &&
        prev_grad_norm_sq > 0.0) {
      Tangent old_grad_here = p.manifold.project_tangent(x, prev_grad.factors);
      Tangent old_dir_here = p.manifold.project_tangent(x, prev_dir.factors);
      double beta = (grad_norm_sq - p.manifold.inner(x, grad, old_grad_here)) /
                    prev_grad_norm_sq;
      beta = std::max(0.0, beta);
      dir = dir + beta * old_dir_here;
    }
    double slope = p.manifold.inner(x, grad, dir);
    if (!(slope < 0.0)) {
      dir = -1.0 * grad;
      slope = -grad_norm_sq;
    }

    // Armijo backtracking. A retraction failure (rank-deficient trial point)
    // is treated like a rejected trial.
    double alpha = (k == 1) ? opts.ls_initial_step : std::min(1.0, 2.0 * prev_step);
    bool accepted = false;
    Point x_next;
    double f_next = 0.0;
    for (int h = 0; h <= opts.max_ls_halvings; ++h) {
      bool ok = true;
      Point trial;
      try {
        trial = p.manifold.retract(x, alpha * dir);
      } catch (const NumericalError&) {
        ok = false;
      }
      if (ok) {
        const double f_trial = p.cost(trial);
        // Strict decrease is required on top of the Armijo bound: once
        // alpha*slope underflows against fx the bound degenerates to
        // f_trial <= fx and would accept no-progress steps forever.
        if (std::isfinite(f_trial) && f_trial < fx &&
            f_trial <= fx + opts.ls_sufficient_decrease * alpha * slope) {
          accepted = true;
          x_next = std::move(trial);
          f_next = f_trial;
          break;
        }
      }
      alpha *= opts.ls_contraction;
    }
    if (!accepted) {
      stalled = true;
      break;
    }

    prev_grad = std::move(grad);
    prev_dir = std::move(dir);
    prev_grad_norm_sq = grad_norm_sq;
    have_prev = true;
    prev_step = alpha;

    x = std::move(x_next);
    fx = f_next;
    grad = p.manifold.riemannian_grad(x, p.euclidean_grad(x));
    grad_norm_sq = p.manifold.inner(x, grad, grad);
    grad_norm = std::sqrt(std::max(0.0, grad_norm_sq));

    if (opts.on_iteration) opts.on_iteration(k, x, fx, grad_norm);
  }

  return SolveResult{std::move(x), iters, grad_norm, fx, stalled};
}

double fd_check(const SmoothProblem& p, const Point& x, double h,
                int directions, std::uint64_t seed) {
  if (!p.cost || !p.euclidean_grad)
    throw std::invalid_argument("fd_check: cost and euclidean_grad are required");
  if (!(h > 0.0)) throw std::invalid_argument("fd_check: h must be > 0");
  if (directions < 1) throw std::invalid_argument("fd_check: directions must be >= 1");
  p.manifold.require_point_shapes(x);

  std::mt19937_64 gen(seed);
  const FactorList egrad = p.euclidean_grad(x);
  double worst = 0.0;
  for (int d = 0; d < directions; ++d) {
    FactorList ambient;
    ambient.reserve(p.manifold.num_factors());
    for (const FactorSpec& spec : p.manifold.factors())
      ambient.push_back(gaussian_matrix(spec.rows, spec.cols, gen));
    Tangent t = p.manifold.project_tangent(x, ambient);
    const double tn = std::sqrt(std::max(0.0, p.manifold.inner(x, t, t)));
    if (tn < 1e-14) continue;  // degenerate draw, e.g. a 1x1 Stiefel factor
    t = (1.0 / tn) * t;

    const double analytic = frobenius_inner(egrad, t.factors);
    const double fp = p.cost(p.manifold.retract(x, h * t));
    const double fm = p.cost(p.manifold.retract(x, -h * t));
    const double numeric = (fp - fm) / (2.0 * h);

    double rel = 0.0;
    if (std::abs(analytic) > 1e-12 || std::abs(numeric) > 1e-12)
      rel = std::abs(analytic - numeric) / std::max(std::abs(analytic), std::abs(numeric));
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace madmm
