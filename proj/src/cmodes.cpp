#include "madmm/cmodes.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "madmm/rng.hpp"

namespace madmm {

SparseMatrix line_graph_laplacian(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("line_graph_laplacian: need n >= 2");
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(3 * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double degree = (i == 0 || i == n - 1) ? 1.0 : 2.0;
    trips.emplace_back(i, i, degree);
    if (i + 1 < n) {
      trips.emplace_back(i, i + 1, -1.0);
      trips.emplace_back(i + 1, i, -1.0);
    }
  }
  SparseMatrix lap(n, n);
  lap.setFromTriplets(trips.begin(), trips.end());
  lap.makeCompressed();
  return lap;
}

void validate_laplacian(const SparseMatrix& lap) {
  if (lap.rows() != lap.cols())
    throw DimensionError("validate_laplacian: matrix must be square");
  SparseMatrix diff = SparseMatrix(lap.transpose()) - lap;
  if (diff.norm() > 0.0)
    throw std::invalid_argument("validate_laplacian: matrix is not symmetric");
  double scale = 1.0;
  for (Eigen::Index i = 0; i < lap.rows(); ++i)
    scale = std::max(scale, std::abs(lap.coeff(i, i)));
  std::mt19937_64 gen(7);
  for (int t = 0; t < 8; ++t) {
    Vector v = gaussian_vector(lap.rows(), gen);
    v /= v.norm();
    const double quad = v.dot(lap * v);
    if (quad < -1e-10 * scale)
      throw std::invalid_argument("validate_laplacian: matrix is not positive semidefinite");
  }
}

double dirichlet_energy(const Matrix& phi, const SparseMatrix& lap) {
  if (phi.rows() != lap.rows())
    throw DimensionError("dirichlet_energy: row count does not match the Laplacian");
  return (lap * phi).cwiseProduct(phi).sum();
}

double cmm_objective(const Matrix& phi, const SparseMatrix& lap, double mu) {
  return dirichlet_energy(phi, lap) + mu * phi.cwiseAbs().sum();
}

std::vector<double> support_fractions(const Matrix& modes, double rel_threshold) {
  std::vector<double> out(static_cast<std::size_t>(modes.cols()), 0.0);
  for (Eigen::Index j = 0; j < modes.cols(); ++j) {
    const double peak = modes.col(j).cwiseAbs().maxCoeff();
    if (peak <= 0.0) continue;
    const double cut = rel_threshold * peak;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < modes.rows(); ++i)
      if (std::abs(modes(i, j)) > cut) ++count;
    out[static_cast<std::size_t>(j)] =
        static_cast<double>(count) / static_cast<double>(modes.rows());
  }
  return out;
}

std::pair<Vector, Matrix> eig_baseline(const SparseMatrix& lap, Eigen::Index k) {
  if (k < 1 || k > lap.rows())
    throw std::invalid_argument("eig_baseline: need 1 <= k <= n");
  validate_laplacian(lap);
  Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(lap)};
  if (es.info() != Eigen::Success)
    throw NumericalError("eig_baseline: eigendecomposition failed");
  return {es.eigenvalues().head(k), es.eigenvectors().leftCols(k)};
}

MadmmOptions cmodes_default_options() {
  MadmmOptions opts;
  opts.rho = 2.0;
  opts.inner_iters = 3;
  opts.inner_method = DescentMethod::ConjugateGradient;
  opts.max_outer = 400;
  return opts;
}

CmodesResult compressed_modes(const SparseMatrix& lap, Eigen::Index k, double mu,
                              const MadmmOptions& opts, std::uint64_t seed,
                              const MadmmIterCallback& on_iteration) {
  if (k < 1 || k > lap.rows())
    throw std::invalid_argument("compressed_modes: need 1 <= k <= n");
  if (!(mu >= 0.0)) throw std::invalid_argument("compressed_modes: mu must be >= 0");
  validate_laplacian(lap);

  const Eigen::Index n = lap.rows();
  SplitProblem sp{Manifold::stiefel(n, k), {}, {}, {}, {}, {}};
  sp.smooth_cost = [&lap](const Point& x) { return dirichlet_energy(x.mat(), lap); };
  sp.smooth_grad = [&lap](const Point& x) {
    return FactorList{2.0 * (lap * x.mat())};
  };
  sp.op.apply = [](const Point& x) { return x.mat(); };
  sp.op.adjoint = [](const Point&, const Matrix& r) { return FactorList{r}; };
  sp.op.out_rows = n;
  sp.op.out_cols = k;
  sp.prox_g = [mu](const Matrix& v, double tau) { return shrink(v, mu * tau); };
  sp.g_value = [mu](const Matrix& z) { return mu * z.cwiseAbs().sum(); };

  Point x0 = sp.manifold.random_point(seed);
  MadmmResult res = madmm_solve(sp, x0, opts, on_iteration);

  CmodesResult out;
  out.support_fraction = support_fractions(res.x.mat());
  out.modes = std::move(res.x.mat());
  out.trace = std::move(res.trace);
  return out;
}

}  // namespace madmm
