#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "madmm/madmm.hpp"

namespace madmm {

// Simultaneous alignment of spectral bases across a collection of shapes:
// minimize  sum_{pairs (i,j)} ||F_ij' Phi_i X_i - G_ij' Phi_j X_j||_{2,1}
//         + mu * sum_i off(X_i' Lambda_i X_i)
// over k x k orthonormal X_i. The 2,1-norm makes the data term robust to
// corresponding-function outliers; the off term keeps the rotated bases
// approximately eigenbases.

struct CorrespondencePair {
  int i = 0;
  int j = 0;
  Matrix f;  // n_i x q corresponding functions on shape i
  Matrix g;  // n_j x q corresponding functions on shape j
};

struct CorrespondenceProblem {
  std::vector<Matrix> bases;        // Phi_i, n_i x k, orthonormal columns
  std::vector<Vector> eigenvalues;  // Lambda_i diagonals, length k
  std::vector<CorrespondencePair> pairs;
  double mu = 0.0;

  int num_shapes() const { return static_cast<int>(bases.size()); }
  Eigen::Index k() const { return bases.empty() ? 0 : bases.front().cols(); }

  void validate() const;  // throws on inconsistent shapes or invalid pairs
};

// Sum of squared off-diagonal entries.
double off_value(const Matrix& m);

// Sum of column 2-norms.
double l21_norm(const Matrix& a);

// Euclidean gradient of off(X' diag(lambda) X): 4 diag(lambda) X offpart(X' diag(lambda) X).
Matrix off_gradient(const Matrix& x, const Vector& lambda);

struct FuncorrObjective {
  double data_term = 0.0;      // sum of pairwise 2,1-norms
  double coupling_term = 0.0;  // mu-weighted off sum
  double total() const { return data_term + coupling_term; }
};

FuncorrObjective funcorr_objective_parts(const std::vector<Matrix>& xs,
                                         const CorrespondenceProblem& prob);
double funcorr_objective(const std::vector<Matrix>& xs, const CorrespondenceProblem& prob);

// The pairwise residual blocks stacked vertically into one (sum_p q_p) x k
// matrix; linear in (X_1, ..., X_L). Exposed for adjoint verification.
LinearOperator funcorr_operator(const CorrespondenceProblem& prob);

// Row offset of each pair's block inside the stacked residual matrix.
std::vector<Eigen::Index> funcorr_block_offsets(const CorrespondenceProblem& prob);

struct FuncorrResult {
  std::vector<Matrix> rotations;  // final X_i
  ConvergenceTrace trace;
  FuncorrObjective objective;
};

// rho = 1 and 4 inner conjugate-gradient iterations per outer pass.
MadmmOptions funcorr_default_options();

// Splitting solver on the product Stiefel manifold, started at X_i = I.
FuncorrResult funcorr_solve(const CorrespondenceProblem& prob, const MadmmOptions& opts,
                            const MadmmIterCallback& on_iteration = {});

struct SynthCorrespondence {
  CorrespondenceProblem problem;
  std::vector<Matrix> ground_truth;  // rotations R_i the clean data satisfies
  // Per pair, the columns of G that were replaced by norm-matched noise.
  std::vector<std::vector<int>> outlier_columns;
};

// Random bases and eigenvalues with ground-truth rotations R_i; the clean
// data satisfies G_ij' Phi_j R_j = F_ij' Phi_i R_i exactly, then
// floor(outlier_frac * q) columns of each G_ij are replaced by Gaussian
// vectors matched in norm. mu defaults to 1e-2 times the data term at the
// identity initialization.
SynthCorrespondence synth_correspondence_problem(std::uint64_t seed, int num_shapes,
                                                 Eigen::Index n, Eigen::Index k,
                                                 Eigen::Index q, double outlier_frac);

// One CSV per matrix plus a manifest listing shapes and pairs.
void write_correspondence_problem(const std::filesystem::path& dir,
                                  const CorrespondenceProblem& prob);
CorrespondenceProblem read_correspondence_problem(const std::filesystem::path& dir);

}  // namespace madmm
