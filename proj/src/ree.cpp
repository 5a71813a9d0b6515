#include "madmm/ree.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "madmm/rng.hpp"

namespace madmm {

void validate_distance_matrix(const Matrix& d) {
  if (d.rows() != d.cols())
    throw DimensionError("distance matrix must be square");
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("distance matrix must be symmetric");
  if (d.diagonal().cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("distance matrix must have a zero diagonal");
  if (d.minCoeff() < -1e-10 * scale)
    throw std::invalid_argument("distance matrix must be nonnegative");
}

Matrix double_center(const Matrix& d) {
  if (d.rows() != d.cols()) throw DimensionError("double_center: matrix must be square");
  const Vector row_mean = d.rowwise().mean();
  const double total_mean = d.mean();
  Matrix b = d;
  b.colwise() -= row_mean;
  b.rowwise() -= row_mean.transpose();
  b.array() += total_mean;
  b *= -0.5;
  return b;
}

Matrix dist_from_gram(const Matrix& b) {
  if (b.rows() != b.cols()) throw DimensionError("dist_from_gram: matrix must be square");
  const Vector diag = b.diagonal();
  Matrix out = -2.0 * b;
  out.colwise() += diag;
  out.rowwise() += diag.transpose();
  out.diagonal().setZero();
  return out;
}

Matrix dist_adjoint(const Matrix& r) {
  if (r.rows() != r.cols()) throw DimensionError("dist_adjoint: matrix must be square");
  const Matrix rt = 0.5 * (r + r.transpose());
  Matrix out = -2.0 * rt;
  out.diagonal() += 2.0 * rt.rowwise().sum();
  return out;
}

Matrix classical_mds(const Matrix& d, Eigen::Index k) {
  validate_distance_matrix(d);
  if (k < 1 || k > d.rows()) throw std::invalid_argument("classical_mds: need 1 <= k <= n");
  Eigen::SelfAdjointEigenSolver<Matrix> es(double_center(d));
  if (es.info() != Eigen::Success)
    throw NumericalError("classical_mds: eigendecomposition failed");
  const Eigen::Index n = d.rows();
  Matrix x(n, k);
  for (Eigen::Index m = 0; m < k; ++m) {
    const Eigen::Index idx = n - 1 - m;  // eigenvalues come out ascending
    const double lambda = std::max(0.0, es.eigenvalues()(idx));
    x.col(m) = std::sqrt(lambda) * es.eigenvectors().col(idx);
  }
  return x;
}

Matrix planar_config(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("planar_config: need n >= 1");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix x(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = 2.0 * unit(gen);
    x(i, 1) = unit(gen);
  }
  return x;
}

Matrix squared_distance_matrix(const Matrix& points) {
  const Eigen::Index n = points.rows();
  Matrix d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (points.row(i) - points.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Matrix outlier_contaminate(const Matrix& d, double frac, double factor, std::uint64_t seed) {
  validate_distance_matrix(d);
  if (!(frac >= 0.0 && frac <= 1.0))
    throw std::invalid_argument("outlier_contaminate: frac must lie in [0, 1]");
  const Eigen::Index n = d.rows();
  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  const long long m = static_cast<long long>(std::floor(frac * static_cast<double>(total)));

  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(total));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::mt19937_64 gen(seed);
  Matrix out = d;
  const double scale = factor * factor;
  for (long long t = 0; t < m; ++t) {
    std::uniform_int_distribution<long long> pick(t, total - 1);
    std::swap(pairs[static_cast<std::size_t>(t)], pairs[static_cast<std::size_t>(pick(gen))]);
    const auto [i, j] = pairs[static_cast<std::size_t>(t)];
    out(i, j) *= scale;
    out(j, i) = out(i, j);
  }
  return out;
}

double procrustes_rms(const Matrix& x, const Matrix& x_ref) {
  if (x.rows() != x_ref.rows() || x.cols() != x_ref.cols())
    throw DimensionError("procrustes_rms: shape mismatch");
  const Eigen::Index n = x.rows();
  if (n < 1) throw DimensionError("procrustes_rms: empty input");
  const Matrix a = x.rowwise() - x.colwise().mean();
  const Matrix b = x_ref.rowwise() - x_ref.colwise().mean();
  Eigen::JacobiSVD<Matrix> svd(a.transpose() * b,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix rot = svd.matrixU() * svd.matrixV().transpose();
  return (a * rot - b).norm() / std::sqrt(static_cast<double>(n));
}

MadmmOptions ree_default_options() {
  MadmmOptions opts;
  opts.rho = 10.0;
  opts.inner_iters = 2;
  opts.inner_method = DescentMethod::ConjugateGradient;
  opts.max_outer = 200;
  return opts;
}

ReeResult ree_solve(const Matrix& d, Eigen::Index k, const MadmmOptions& opts,
                    const MadmmIterCallback& on_iteration, const Matrix* initial) {
  validate_distance_matrix(d);
  if (k < 1 || k > d.rows()) throw std::invalid_argument("ree_solve: need 1 <= k <= n");
  const Eigen::Index n = d.rows();

  SplitProblem sp{Manifold::psd_fixed_rank_factor(n, k), {}, {}, {}, {}, {}};
  // The coupling map Y -> dist(YY') is quadratic in Y; its differential at Y
  // applied adjointly to a residual R is 2 dist_adjoint(R) Y, which is what
  // the X-step needs.
  sp.op.apply = [](const Point& x) {
    const Matrix& y = x.mat();
    return dist_from_gram(y * y.transpose());
  };
  sp.op.adjoint = [](const Point& x, const Matrix& r) {
    return FactorList{2.0 * dist_adjoint(r) * x.mat()};
  };
  sp.op.out_rows = n;
  sp.op.out_cols = n;
  sp.prox_g = [&d](const Matrix& v, double tau) -> Matrix {
    return d - shrink(d - v, tau);
  };
  sp.g_value = [&d](const Matrix& z) { return (d - z).cwiseAbs().sum(); };

  Point x0(initial ? *initial : classical_mds(d, k));
  sp.manifold.require_point_shapes(x0);
  MadmmResult res = madmm_solve(sp, x0, opts, on_iteration);

  ReeResult out;
  out.embedding = std::move(res.x.mat());
  out.trace = std::move(res.trace);
  return out;
}

}  // namespace madmm
