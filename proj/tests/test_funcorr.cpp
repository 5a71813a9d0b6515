#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "madmm/funcorr.hpp"
#include "madmm/rng.hpp"
#include "test_helpers.hpp"

using namespace madmm;

namespace {

std::vector<Matrix> identity_rotations(const CorrespondenceProblem& prob) {
  return std::vector<Matrix>(static_cast<std::size_t>(prob.num_shapes()),
                             Matrix::Identity(prob.k(), prob.k()));
}

}  // namespace

TEST_CASE("off_value and l21_norm on hand values") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  CHECK(off_value(m) == 13.0);  // 2^2 + 3^2
  CHECK(off_value(Matrix::Identity(3, 3)) == 0.0);

  Matrix a(2, 2);
  a << 3.0, 0.0, 4.0, 0.0;
  CHECK(l21_norm(a) == 5.0);
}

TEST_CASE("off_gradient matches entrywise finite differences") {
  std::mt19937_64 gen(81);
  Matrix x = gaussian_matrix(4, 4, gen);
  Vector lambda(4);
  lambda << 0.5, 1.0, 2.0, 3.5;
  Matrix grad = off_gradient(x, lambda);
  auto off_at = [&](const Matrix& m) {
    return off_value(m.transpose() * lambda.asDiagonal() * m);
  };
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Matrix xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      const double fd = (off_at(xp) - off_at(xm)) / (2.0 * h);
      CHECK(grad(i, j) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("synthetic problems are exactly consistent before corruption") {
  SynthCorrespondence synth = synth_correspondence_problem(31, 3, 40, 6, 10, 0.0);
  const CorrespondenceProblem& prob = synth.problem;
  prob.validate();
  CHECK(prob.num_shapes() == 3);
  CHECK(prob.pairs.size() == 6);  // all ordered pairs of 3 shapes
  for (const auto& cols : synth.outlier_columns) CHECK(cols.empty());

  // At the ground-truth rotations the data term vanishes.
  CorrespondenceProblem unpenalized = prob;
  unpenalized.mu = 0.0;
  CHECK(funcorr_objective(synth.ground_truth, unpenalized) < 1e-8);
}

TEST_CASE("outlier columns are counted, sorted, and leave clean columns intact") {
  const Eigen::Index q = 8;
  SynthCorrespondence synth = synth_correspondence_problem(32, 2, 30, 5, q, 0.25);
  REQUIRE(synth.outlier_columns.size() == synth.problem.pairs.size());
  for (std::size_t p = 0; p < synth.problem.pairs.size(); ++p) {
    const auto& cols = synth.outlier_columns[p];
    CHECK(cols.size() == 2);  // floor(0.25 * 8)
    CHECK(std::is_sorted(cols.begin(), cols.end()));
    for (int c : cols) {
      CHECK(c >= 0);
      CHECK(c < q);
    }
    // Residual at the ground truth: each replaced column of G feeds one row of
    // the q-by-k block F'Phi_i R_i - G'Phi_j R_j, so exactly those rows light up.
    const CorrespondencePair& pair = synth.problem.pairs[p];
    const Matrix lhs = pair.f.transpose() *
                       synth.problem.bases[static_cast<std::size_t>(pair.i)] *
                       synth.ground_truth[static_cast<std::size_t>(pair.i)];
    const Matrix rhs = pair.g.transpose() *
                       synth.problem.bases[static_cast<std::size_t>(pair.j)] *
                       synth.ground_truth[static_cast<std::size_t>(pair.j)];
    const Matrix residual = lhs - rhs;
    for (Eigen::Index c = 0; c < q; ++c) {
      const bool is_outlier =
          std::find(cols.begin(), cols.end(), static_cast<int>(c)) != cols.end();
      if (is_outlier)
        CHECK(residual.row(c).norm() > 1e-6);
      else
        CHECK(residual.row(c).norm() < 1e-10);
    }
  }
}

TEST_CASE("the default coupling weight is a fixed fraction of the initial data term") {
  SynthCorrespondence synth = synth_correspondence_problem(33, 2, 25, 5, 7, 0.2);
  CorrespondenceProblem probe = synth.problem;
  probe.mu = 0.0;
  const double data_at_identity =
      funcorr_objective_parts(identity_rotations(probe), probe).data_term;
  CHECK(synth.problem.mu ==
        doctest::Approx(1e-2 * data_at_identity).epsilon(1e-12));
}

TEST_CASE("the stacked operator satisfies the adjoint identity") {
  SynthCorrespondence synth = synth_correspondence_problem(34, 3, 20, 4, 6, 0.1);
  LinearOperator op = funcorr_operator(synth.problem);
  Manifold m = Manifold::product_stiefel(
      std::vector<Eigen::Index>(3, synth.problem.k()), synth.problem.k());
  std::mt19937_64 gen(35);
  Point base = m.random_point(36);
  for (int t = 0; t < 20; ++t) {
    FactorList xs = test_helpers::random_ambient(m, gen);
    Matrix r = gaussian_matrix(op.out_rows, op.out_cols, gen);
    // The map is linear, so it can be applied to arbitrary factor lists.
    const double lhs = (op.apply(Point(xs)).cwiseProduct(r)).sum();
    const double rhs = frobenius_inner(op.adjoint(base, r), xs);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("block offsets partition the stacked residual") {
  SynthCorrespondence synth = synth_correspondence_problem(37, 3, 15, 3, 5, 0.0);
  const std::vector<Eigen::Index> offsets = funcorr_block_offsets(synth.problem);
  REQUIRE(offsets.size() == synth.problem.pairs.size() + 1);
  CHECK(offsets.front() == 0);
  for (std::size_t p = 0; p < synth.problem.pairs.size(); ++p)
    CHECK(offsets[p + 1] - offsets[p] == synth.problem.pairs[p].f.cols());
  LinearOperator op = funcorr_operator(synth.problem);
  CHECK(op.out_rows == offsets.back());
  CHECK(op.out_cols == synth.problem.k());
}

TEST_CASE("solver trace and reported objective agree with direct evaluation") {
  SynthCorrespondence synth = synth_correspondence_problem(38, 2, 30, 5, 8, 0.15);
  MadmmOptions opts = funcorr_default_options();
  opts.max_outer = 60;
  FuncorrResult res = funcorr_solve(synth.problem, opts);
  const double direct = funcorr_objective(res.rotations, synth.problem);
  CHECK(res.objective.total() == doctest::Approx(direct).epsilon(1e-10));
  CHECK(res.trace.final_objective() == doctest::Approx(direct).epsilon(1e-10));
  // Rotations stay orthonormal.
  for (const Matrix& x : res.rotations)
    CHECK((x.transpose() * x - Matrix::Identity(x.cols(), x.cols())).norm() < 1e-8);
}

TEST_CASE("a clean unpenalized problem is driven to a near-zero data term") {
  SynthCorrespondence synth = synth_correspondence_problem(39, 2, 30, 5, 8, 0.0);
  CorrespondenceProblem prob = synth.problem;
  prob.mu = 0.0;
  MadmmOptions opts = funcorr_default_options();
  opts.max_outer = 500;
  FuncorrResult res = funcorr_solve(prob, opts);
  CHECK(res.objective.total() < 1e-6);
}

TEST_CASE("solving lowers the objective below the identity initialization") {
  SynthCorrespondence synth = synth_correspondence_problem(40, 2, 25, 5, 10, 0.16);
  MadmmOptions opts = funcorr_default_options();
  opts.max_outer = 120;
  FuncorrResult res = funcorr_solve(synth.problem, opts);
  const double at_identity =
      funcorr_objective(identity_rotations(synth.problem), synth.problem);
  CHECK(res.objective.total() < at_identity);
}

TEST_CASE("problem round trip through the on-disk format") {
  SynthCorrespondence synth = synth_correspondence_problem(41, 3, 12, 3, 4, 0.1);
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "madmm_funcorr_roundtrip";
  std::filesystem::remove_all(dir);
  write_correspondence_problem(dir, synth.problem);
  CorrespondenceProblem back = read_correspondence_problem(dir);
  back.validate();
  CHECK(back.mu == synth.problem.mu);
  REQUIRE(back.bases.size() == synth.problem.bases.size());
  for (std::size_t i = 0; i < back.bases.size(); ++i) {
    CHECK(back.bases[i] == synth.problem.bases[i]);
    CHECK(back.eigenvalues[i] == synth.problem.eigenvalues[i]);
  }
  REQUIRE(back.pairs.size() == synth.problem.pairs.size());
  for (std::size_t p = 0; p < back.pairs.size(); ++p) {
    CHECK(back.pairs[p].i == synth.problem.pairs[p].i);
    CHECK(back.pairs[p].j == synth.problem.pairs[p].j);
    CHECK(back.pairs[p].f == synth.problem.pairs[p].f);
    CHECK(back.pairs[p].g == synth.problem.pairs[p].g);
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_correspondence_problem(dir), IoError);
}

TEST_CASE("validation rejects inconsistent problems") {
  SynthCorrespondence synth = synth_correspondence_problem(42, 2, 10, 3, 4, 0.0);
  CorrespondenceProblem bad = synth.problem;
  bad.pairs[0].i = 5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = synth.problem;
  bad.bases[0] *= 2.0;  // no longer orthonormal
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = synth.problem;
  bad.mu = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK_THROWS_AS(synth_correspondence_problem(1, 1, 10, 3, 4, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(synth_correspondence_problem(1, 2, 2, 3, 4, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(synth_correspondence_problem(1, 2, 10, 3, 4, 1.5),
                  std::invalid_argument);
}
