#include "madmm/baselines.hpp"

#include <cmath>
#include <memory>

namespace madmm {

double smoothed_l21(const Matrix& a, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("smoothed_l21: epsilon must be >= 0");
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    s += std::sqrt(a.col(j).squaredNorm() + epsilon);
  return s;
}

namespace {

struct ReducedPair {
  int i = 0;
  int j = 0;
  Matrix p;  // F'Phi_i
  Matrix q;  // G'Phi_j
};

std::shared_ptr<std::vector<ReducedPair>> reduce(const CorrespondenceProblem& prob) {
  auto out = std::make_shared<std::vector<ReducedPair>>();
  out->reserve(prob.pairs.size());
  for (const CorrespondencePair& p : prob.pairs) {
    ReducedPair r;
    r.i = p.i;
    r.j = p.j;
    r.p = p.f.transpose() * prob.bases[static_cast<std::size_t>(p.i)];
    r.q = p.g.transpose() * prob.bases[static_cast<std::size_t>(p.j)];
    out->push_back(std::move(r));
  }
  return out;
}

}  // namespace

SmoothProblem smoothed_funcorr_problem(const CorrespondenceProblem& prob, double epsilon) {
  prob.validate();
  if (!(epsilon > 0.0))
    throw std::invalid_argument("smoothed_funcorr_problem: epsilon must be > 0");
  auto pairs = reduce(prob);
  const Eigen::Index k = prob.k();
  const std::size_t num_shapes = prob.bases.size();
  const double mu = prob.mu;
  // Copy the eigenvalue diagonals so the problem object owns everything.
  auto lambdas = std::make_shared<std::vector<Vector>>(prob.eigenvalues);

  SmoothProblem sp{Manifold::product_stiefel(std::vector<Eigen::Index>(num_shapes, k), k),
                   {}, {}};
  sp.cost = [pairs, lambdas, mu, epsilon](const Point& x) {
    double c = 0.0;
    for (const ReducedPair& r : *pairs)
      c += smoothed_l21(r.p * x.factors[static_cast<std::size_t>(r.i)] -
                            r.q * x.factors[static_cast<std::size_t>(r.j)],
                        epsilon);
    for (std::size_t i = 0; i < x.factors.size(); ++i) {
      const Matrix s =
          x.factors[i].transpose() * ((*lambdas)[i].asDiagonal() * x.factors[i]);
      c += mu * off_value(s);
    }
    return c;
  };
  sp.euclidean_grad = [pairs, lambdas, mu, epsilon, num_shapes, k](const Point& x) {
    FactorList g(num_shapes, Matrix::Zero(k, k));
    for (const ReducedPair& r : *pairs) {
      Matrix resid = r.p * x.factors[static_cast<std::size_t>(r.i)] -
                     r.q * x.factors[static_cast<std::size_t>(r.j)];
      // d/dA sum_j sqrt(||a_j||^2 + eps) scales each column by 1/sqrt(...).
      for (Eigen::Index col = 0; col < resid.cols(); ++col)
        resid.col(col) /= std::sqrt(resid.col(col).squaredNorm() + epsilon);
      g[static_cast<std::size_t>(r.i)] += r.p.transpose() * resid;
      g[static_cast<std::size_t>(r.j)] -= r.q.transpose() * resid;
    }
    for (std::size_t i = 0; i < x.factors.size(); ++i)
      g[i] += mu * off_gradient(x.factors[i], (*lambdas)[i]);
    return g;
  };
  return sp;
}

FuncorrResult smoothed_l21_solve(const CorrespondenceProblem& prob,
                                 const SmoothedL21Options& opts) {
  SmoothProblem sp = smoothed_funcorr_problem(prob, opts.epsilon);
  auto pairs = reduce(prob);
  const double mu = prob.mu;
  const std::vector<Vector>& lambdas = prob.eigenvalues;

  // True objective from the reduced pair data, cheap enough for per-iteration
  // tracing without distorting wall-clock comparisons.
  auto true_objective = [&pairs, &lambdas, mu](const Point& x) {
    double c = 0.0;
    for (const ReducedPair& r : *pairs)
      c += l21_norm(r.p * x.factors[static_cast<std::size_t>(r.i)] -
                    r.q * x.factors[static_cast<std::size_t>(r.j)]);
    for (std::size_t i = 0; i < x.factors.size(); ++i) {
      const Matrix s = x.factors[i].transpose() * (lambdas[i].asDiagonal() * x.factors[i]);
      c += mu * off_value(s);
    }
    return c;
  };

  ConvergenceTrace trace;
  Stopwatch clock;
  SolverOptions solver = opts.solver;
  solver.on_iteration = [&](int iter, const Point& x, double smoothed_cost, double) {
    trace.rows.push_back(
        TraceRow{iter, true_objective(x), 0.0, smoothed_cost, clock.seconds()});
  };

  const Eigen::Index k = prob.k();
  FactorList init(prob.bases.size(), Matrix::Identity(k, k));
  SolveResult res = solve(sp, Point(init), solver);

  FuncorrResult out;
  out.rotations = std::move(res.x.factors);
  out.objective = funcorr_objective_parts(out.rotations, prob);
  out.trace = std::move(trace);
  return out;
}

SubgradientResult ree_subgradient(const Matrix& d, Eigen::Index k,
                                  const SubgradientOptions& opts) {
  validate_distance_matrix(d);
  if (k < 1 || k > d.rows())
    throw std::invalid_argument("ree_subgradient: need 1 <= k <= n");
  if (!(opts.c > 0.0)) throw std::invalid_argument("ree_subgradient: c must be > 0");
  if (opts.max_iters < 1)
    throw std::invalid_argument("ree_subgradient: max_iters must be >= 1");

  Stopwatch clock;
  SubgradientResult out;
  Matrix y = classical_mds(d, k);

  auto objective = [&d](const Matrix& yy) {
    return (d - dist_from_gram(yy * yy.transpose())).cwiseAbs().sum();
  };

  double obj = objective(y);
  const double initial = obj;
  out.trace.rows.push_back(TraceRow{0, obj, 0.0, obj, clock.seconds()});

  for (int t = 1; t <= opts.max_iters; ++t) {
    const Matrix resid = dist_from_gram(y * y.transpose()) - d;
    const Matrix sign = resid.unaryExpr([](double v) {
      if (v > 0.0) return 1.0;
      if (v < 0.0) return -1.0;
      return 0.0;
    });
    const Matrix sub = 2.0 * dist_adjoint(sign) * y;
    y -= (opts.c / std::pow(static_cast<double>(t), opts.schedule_exponent)) * sub;
    if (!all_finite(y))
      throw NumericalError("ree_subgradient: non-finite iterate at step " + std::to_string(t));
    obj = objective(y);
    out.trace.rows.push_back(TraceRow{t, obj, 0.0, obj, clock.seconds()});
    if (obj > 10.0 * initial + 1e-12) {
      out.diverged = true;
      break;
    }
  }

  out.embedding = std::move(y);
  return out;
}

}  // namespace madmm
