#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "madmm/prox.hpp"
#include "madmm/ree.hpp"
#include "madmm/rng.hpp"
#include "test_helpers.hpp"

using namespace madmm;

namespace {

double l1_misfit(const Matrix& d, const Matrix& y) {
  return (d - dist_from_gram(y * y.transpose())).cwiseAbs().sum();
}

// Best rigid alignment in the plane, derived independently of the SVD route:
// closed-form optimal rotation angle, tried with and without a reflection.
double planar_alignment_rms(const Matrix& x, const Matrix& ref) {
  Matrix a = x.rowwise() - x.colwise().mean();
  Matrix b = ref.rowwise() - ref.colwise().mean();
  auto rms_for = [&](const Matrix& a_used) {
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < a_used.rows(); ++i) {
      num += a_used(i, 0) * b(i, 1) - a_used(i, 1) * b(i, 0);
      den += a_used(i, 0) * b(i, 0) + a_used(i, 1) * b(i, 1);
    }
    const double theta = std::atan2(num, den);
    Matrix rot(2, 2);
    rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return ((a_used * rot) - b).norm() / std::sqrt(static_cast<double>(a.rows()));
  };
  Matrix reflected = a;
  reflected.col(0) *= -1.0;
  return std::min(rms_for(a), rms_for(reflected));
}

}  // namespace

TEST_CASE("double centering on the 2-point example") {
  Matrix d(2, 2);
  d << 0.0, 1.0, 1.0, 0.0;
  Matrix b = double_center(d);
  CHECK(b(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(b(0, 1) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(b(1, 0) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(b(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("dist of the identity Gram matrix") {
  Matrix d = dist_from_gram(Matrix::Identity(2, 2));
  CHECK(d(0, 0) == 0.0);
  CHECK(d(1, 1) == 0.0);
  CHECK(d(0, 1) == 2.0);
  CHECK(d(1, 0) == 2.0);
}

TEST_CASE("dist recovers squared pairwise distances of a configuration") {
  std::mt19937_64 gen(91);
  Matrix pts = gaussian_matrix(7, 3, gen);
  Matrix from_gram = dist_from_gram(pts * pts.transpose());
  Matrix direct = squared_distance_matrix(pts);
  CHECK((from_gram - direct).norm() < 1e-12);
}

TEST_CASE("dist and double_center are mutually inverse on Euclidean data") {
  std::mt19937_64 gen(92);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 5 + (t % 7) * 13;  // up to 83
    Matrix pts = gaussian_matrix(n, 2 + (t % 3), gen);
    Matrix d = squared_distance_matrix(pts);
    CHECK((dist_from_gram(double_center(d)) - d).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("dist_adjoint satisfies the inner-product identity") {
  std::mt19937_64 gen(93);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 6;
    Matrix b0 = gaussian_matrix(n, n, gen);
    Matrix b = (b0 + b0.transpose()) / 2.0;
    Matrix r = gaussian_matrix(n, n, gen);
    const double lhs = (dist_from_gram(b).cwiseProduct(r)).sum();
    const double rhs = (b.cwiseProduct(dist_adjoint(r))).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("dist_adjoint of a symmetric elementary matrix by hand") {
  const Eigen::Index n = 4;
  Matrix r = Matrix::Zero(n, n);
  r(1, 2) = 1.0;
  r(2, 1) = 1.0;
  Matrix a = dist_adjoint(r);
  Matrix expect = Matrix::Zero(n, n);
  expect(1, 1) = 2.0;
  expect(2, 2) = 2.0;
  expect(1, 2) = -2.0;
  expect(2, 1) = -2.0;
  CHECK((a - expect).norm() == 0.0);
  CHECK(dist_adjoint(Matrix::Zero(3, 3)).norm() == 0.0);
}

TEST_CASE("classical MDS splits two points symmetrically") {
  Matrix d(2, 2);
  d << 0.0, 1.0, 1.0, 0.0;
  Matrix x = classical_mds(d, 1);
  CHECK(std::abs(std::abs(x(0, 0)) - 0.5) < 1e-12);
  CHECK(std::abs(std::abs(x(1, 0)) - 0.5) < 1e-12);
  CHECK(std::abs(x(0, 0) + x(1, 0)) < 1e-12);  // centered
}

TEST_CASE("classical MDS recovers a planar configuration up to rigid motion") {
  Matrix pts = planar_config(30, 4);
  Matrix d = squared_distance_matrix(pts);
  Matrix x = classical_mds(d, 2);
  CHECK(procrustes_rms(x, pts) < 1e-8);

  // Asking for more dimensions than the positive rank pads with (numerically)
  // zero columns: sqrt of an eigenvalue that is zero up to roundoff.
  Matrix x4 = classical_mds(d, 4);
  CHECK(x4.col(2).norm() < 1e-6);
  CHECK(x4.col(3).norm() < 1e-6);
}

TEST_CASE("planar configurations live in the documented rectangle") {
  Matrix pts = planar_config(200, 8);
  CHECK(pts.col(0).minCoeff() >= 0.0);
  CHECK(pts.col(0).maxCoeff() <= 2.0);
  CHECK(pts.col(1).minCoeff() >= 0.0);
  CHECK(pts.col(1).maxCoeff() <= 1.0);
  CHECK(pts == planar_config(200, 8));
  CHECK((pts - planar_config(200, 9)).norm() > 1e-6);
}

TEST_CASE("outlier contamination changes exactly the promised pairs") {
  Matrix pts = planar_config(10, 5);
  Matrix d = squared_distance_matrix(pts);
  Matrix c = outlier_contaminate(d, 0.1, 2.0, 6);
  CHECK(outlier_contaminate(d, 0.0, 2.0, 6) == d);
  CHECK(outlier_contaminate(d, 0.1, 2.0, 6) == c);  // seeded, reproducible

  CHECK((c - c.transpose()).norm() == 0.0);
  CHECK(c.diagonal().norm() == 0.0);
  int changed_pairs = 0;
  for (Eigen::Index i = 0; i < 10; ++i)
    for (Eigen::Index j = i + 1; j < 10; ++j)
      if (c(i, j) != d(i, j)) {
        ++changed_pairs;
        CHECK(c(i, j) == doctest::Approx(4.0 * d(i, j)).epsilon(1e-14));
      }
  CHECK(changed_pairs == 4);  // floor(0.1 * 45)
}

TEST_CASE("procrustes_rms is zero under rigid motions and matches a planar oracle") {
  std::mt19937_64 gen(94);
  Matrix x = gaussian_matrix(12, 2, gen);
  CHECK(procrustes_rms(x, x) < 1e-14);

  const double th = 0.7;
  Matrix rot(2, 2);
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  Matrix moved = (x * rot.transpose()).rowwise() + Eigen::RowVector2d(3.0, -1.0);
  CHECK(procrustes_rms(moved, x) < 1e-10);

  Matrix reflected = x;
  reflected.col(0) *= -1.0;
  CHECK(procrustes_rms(reflected, x) < 1e-10);

  for (int t = 0; t < 20; ++t) {
    Matrix a = gaussian_matrix(9, 2, gen);
    Matrix b = gaussian_matrix(9, 2, gen);
    CHECK(procrustes_rms(a, b) == doctest::Approx(planar_alignment_rms(a, b)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(procrustes_rms(Matrix::Zero(3, 2), Matrix::Zero(4, 2)), DimensionError);
}

TEST_CASE("distance-matrix validation catches each defect") {
  Matrix good = squared_distance_matrix(planar_config(5, 1));
  CHECK_NOTHROW(validate_distance_matrix(good));

  Matrix bad = good;
  bad(0, 1) += 1.0;
  CHECK_THROWS_AS(validate_distance_matrix(bad), std::invalid_argument);

  bad = good;
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(validate_distance_matrix(bad), std::invalid_argument);

  bad = good;
  bad(1, 2) = -0.5;
  bad(2, 1) = -0.5;
  CHECK_THROWS_AS(validate_distance_matrix(bad), std::invalid_argument);

  CHECK_THROWS_AS(validate_distance_matrix(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("the Z-step formula solves the entrywise scalar prox") {
  std::mt19937_64 gen(95);
  std::uniform_real_distribution<double> ud(0.0, 4.0);
  std::uniform_real_distribution<double> uv(-4.0, 4.0);
  for (int t = 0; t < 100; ++t) {
    const double d = ud(gen);
    const double v = uv(gen);
    const double rho = (t % 2) ? 10.0 : 2.5;
    // argmin_z |d - z| + (rho/2)(z - v)^2 on a grid.
    double best_z = 0.0, best_f = std::numeric_limits<double>::infinity();
    for (double z = -10.0; z <= 10.0; z += 1e-4) {
      const double f = std::abs(d - z) + 0.5 * rho * (z - v) * (z - v);
      if (f < best_f) {
        best_f = f;
        best_z = z;
      }
    }
    Matrix dm(1, 1), vm(1, 1);
    dm << d;
    vm << v;
    const double closed = (dm - shrink(dm - vm, 1.0 / rho))(0, 0);
    CHECK(std::abs(closed - best_z) < 1e-4);
  }
}

TEST_CASE("the refined embedding never does worse than classical MDS on clean data") {
  Matrix pts = planar_config(25, 12);
  Matrix d = squared_distance_matrix(pts);
  MadmmOptions opts = ree_default_options();
  opts.max_outer = 120;
  ReeResult res = ree_solve(d, 2, opts);
  const double mds_l1 = l1_misfit(d, classical_mds(d, 2));
  CHECK(res.trace.final_objective() <= mds_l1 + 1e-6);
  CHECK(res.trace.final_objective() == doctest::Approx(l1_misfit(d, res.embedding))
                                           .epsilon(1e-10));
}

TEST_CASE("a zero dissimilarity matrix collapses to the origin") {
  Matrix d = Matrix::Zero(6, 6);
  MadmmOptions opts = ree_default_options();
  opts.max_outer = 50;
  ReeResult res = ree_solve(d, 2, opts);
  CHECK(res.embedding.norm() == 0.0);
  CHECK(res.trace.final_objective() == 0.0);
}

TEST_CASE("contaminated distances are repaired far better than least squares") {
  Matrix pts = planar_config(80, 3);
  Matrix d = outlier_contaminate(squared_distance_matrix(pts), 0.05, 2.0, 17);
  MadmmOptions opts = ree_default_options();
  opts.max_outer = 120;
  ReeResult res = ree_solve(d, 2, opts);
  const double rms_mds = procrustes_rms(classical_mds(d, 2), pts);
  const double rms_ree = procrustes_rms(res.embedding, pts);
  CHECK(rms_ree < 0.25 * rms_mds);
}

TEST_CASE("cost and gradient magnitude are invariant under Y -> YQ") {
  std::mt19937_64 gen(96);
  Matrix y = gaussian_matrix(10, 3, gen);
  Matrix q = test_helpers::random_orthogonal(3, gen);
  Matrix d = squared_distance_matrix(gaussian_matrix(10, 3, gen));

  const Matrix yq = y * q;
  CHECK((dist_from_gram(y * y.transpose()) - dist_from_gram(yq * yq.transpose())).norm() <
        1e-10);
  const Matrix residual = dist_from_gram(y * y.transpose()) - d;
  const Matrix g = 2.0 * dist_adjoint(residual) * y;
  const Matrix gq = 2.0 * dist_adjoint(residual) * yq;
  CHECK(std::abs(g.norm() - gq.norm()) < 1e-10 * std::max(1.0, g.norm()));
  CHECK((g * q - gq).norm() < 1e-10 * std::max(1.0, g.norm()));
}

TEST_CASE("the squared-misfit gradient used by the X-step passes finite differences") {
  std::mt19937_64 gen(97);
  const Eigen::Index n = 8, k = 2;
  Matrix w0 = gaussian_matrix(n, n, gen).cwiseAbs();
  Matrix w = (w0 + w0.transpose()) / 2.0;
  w.diagonal().setZero();

  Manifold m = Manifold::psd_fixed_rank_factor(n, k);
  SmoothProblem p{m,
                  [&w](const Point& x) {
                    const Matrix& y = x.mat();
                    return 0.5 * (dist_from_gram(y * y.transpose()) - w).squaredNorm();
                  },
                  [&w](const Point& x) {
                    const Matrix& y = x.mat();
                    const Matrix r = dist_from_gram(y * y.transpose()) - w;
                    return FactorList{2.0 * dist_adjoint(r) * y};
                  }};
  for (std::uint64_t s = 0; s < 5; ++s)
    CHECK(fd_check(p, m.random_point(100 + s), 1e-6) < 1e-6);
}

TEST_CASE("an explicit initial embedding is honored") {
  Matrix pts = planar_config(15, 21);
  Matrix d = squared_distance_matrix(pts);
  MadmmOptions opts = ree_default_options();
  opts.max_outer = 1;
  Matrix init = Matrix::Zero(15, 2);
  ReeResult res = ree_solve(d, 2, opts, {}, &init);
  // Row 0 of the trace evaluates the supplied start: dist(0) = 0, so the
  // objective is the full mass of D.
  CHECK(res.trace.rows.front().objective == doctest::Approx(d.cwiseAbs().sum()));
  CHECK_THROWS_AS(ree_solve(d, 20, opts), std::invalid_argument);
}
