#include "madmm/madmm.hpp"

#include <cmath>
#include <string>

namespace madmm {

namespace {

void validate(const SplitProblem& p, const MadmmOptions& o) {
  if (!p.op.apply || !p.op.adjoint || !p.prox_g || !p.g_value)
    throw std::invalid_argument("madmm_solve: operator, prox_g and g_value are required");
  if (!(o.rho > 0.0)) throw std::invalid_argument("madmm_solve: rho must be > 0");
  if (o.max_outer < 1) throw std::invalid_argument("madmm_solve: max_outer must be >= 1");
  if (o.inner_iters < 1) throw std::invalid_argument("madmm_solve: inner_iters must be >= 1");
  if (!(o.obj_rel_tol >= 0.0))
    throw std::invalid_argument("madmm_solve: obj_rel_tol must be >= 0");
}

}  // namespace

MadmmResult madmm_solve(const SplitProblem& p, const Point& x0,
                        const MadmmOptions& opts,
                        const MadmmIterCallback& on_iteration) {
  validate(p, opts);
  p.manifold.require_point_shapes(x0);

  const double rho = opts.rho;
  Stopwatch clock;

  Point x = x0;
  Matrix ax = p.op.apply(x);
  if (ax.rows() != p.op.out_rows || ax.cols() != p.op.out_cols)
    throw DimensionError("madmm_solve: operator output is " +
                         std::to_string(ax.rows()) + "x" + std::to_string(ax.cols()) +
                         ", declared " + std::to_string(p.op.out_rows) + "x" +
                         std::to_string(p.op.out_cols));
  Matrix z = ax;
  Matrix u = Matrix::Zero(ax.rows(), ax.cols());

  const double primal_tol = opts.primal_tol >= 0.0
                                ? opts.primal_tol
                                : 1e-6 * std::sqrt(static_cast<double>(z.size()));

  auto f_value = [&p](const Point& q) { return p.smooth_cost ? p.smooth_cost(q) : 0.0; };

  ConvergenceTrace trace;
  {
    const double f0 = f_value(x);
    trace.rows.push_back(TraceRow{0, f0 + p.g_value(ax), (ax - z).norm(),
                                  f0 + p.g_value(z) +
                                      0.5 * rho * (ax - z + u).squaredNorm(),
                                  clock.seconds()});
  }

  SolverOptions inner;
  inner.method = opts.inner_method;
  inner.max_iters = opts.inner_iters;
  // The iteration cap is the real budget; the gradient tolerance only skips
  // work when the X-step is already at a stationary point.
  inner.grad_tol = 1e-12;

  int outer = 0;
  for (int k = 1; k <= opts.max_outer; ++k) {
    outer = k;

    // X-step: a few manifold descent iterations on the augmented smooth cost,
    // warm started at the previous X. A stalled line search is tolerated; the
    // outer loop continues from whatever point the inner solver reached.
    SmoothProblem xstep{p.manifold, {}, {}};
    xstep.cost = [&](const Point& q) {
      return f_value(q) + 0.5 * rho * (p.op.apply(q) - z + u).squaredNorm();
    };
    xstep.euclidean_grad = [&](const Point& q) {
      FactorList g = p.op.adjoint(q, p.op.apply(q) - z + u);
      for (Matrix& m : g) m *= rho;
      if (p.smooth_grad) {
        FactorList fg = p.smooth_grad(q);
        if (fg.size() != g.size())
          throw DimensionError("madmm_solve: smooth_grad factor count mismatch");
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += fg[i];
      }
      return g;
    };
    x = solve(xstep, x, inner).x;

    ax = p.op.apply(x);
    z = p.prox_g(ax + u, 1.0 / rho);
    if (z.rows() != ax.rows() || z.cols() != ax.cols())
      throw DimensionError("madmm_solve: prox_g changed the Z shape");
    u += ax - z;

    if (!all_finite(x.factors) || !all_finite(z) || !all_finite(u))
      throw NumericalError("madmm_solve: non-finite iterate at outer iteration " +
                           std::to_string(k));

    const double f_x = f_value(x);
    const double objective = f_x + p.g_value(ax);
    const double residual = (ax - z).norm();
    const double augmented =
        f_x + p.g_value(z) + 0.5 * rho * (ax - z + u).squaredNorm();
    trace.rows.push_back(TraceRow{k, objective, residual, augmented, clock.seconds()});

    if (on_iteration) on_iteration(MadmmState{x, z, u, k, rho});

    if (residual <= primal_tol && trace.rows.size() >= 7) {
      const double now = trace.rows[trace.rows.size() - 1].objective;
      const double then = trace.rows[trace.rows.size() - 6].objective;
      const double rel = std::abs(now - then) / std::max(1e-12, std::abs(now));
      if (rel <= opts.obj_rel_tol) break;
    }
  }

  return MadmmResult{std::move(x), std::move(z), std::move(u), std::move(trace), outer};
}

}  // namespace madmm
