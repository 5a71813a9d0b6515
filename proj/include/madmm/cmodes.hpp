#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "madmm/madmm.hpp"

namespace madmm {

// Compressed modes: minimize tr(Phi' L Phi) + mu ||Phi||_1 over Phi'Phi = I.
// The L1 term trades smoothness (low Dirichlet energy) against spatial
// localization of the modes.

// Path-graph Laplacian: tridiagonal with diagonal (1, 2, ..., 2, 1) and -1 off
// the diagonal. Eigenvalues are 2 - 2 cos(pi j / n), j = 0..n-1.
SparseMatrix line_graph_laplacian(Eigen::Index n);

// Symmetry plus a seeded positive-semidefiniteness spot check; throws on a
// matrix that cannot be a Laplacian.
void validate_laplacian(const SparseMatrix& laplacian);

double dirichlet_energy(const Matrix& phi, const SparseMatrix& laplacian);
double cmm_objective(const Matrix& phi, const SparseMatrix& laplacian, double mu);

// Fraction of entries per column with |phi_ij| > rel_threshold * max_i |phi_ij|.
std::vector<double> support_fractions(const Matrix& modes, double rel_threshold = 1e-3);

// The k smallest eigenpairs by dense symmetric eigendecomposition, as the
// mu = 0 reference. Returns (eigenvalues ascending, eigenvectors as columns).
std::pair<Vector, Matrix> eig_baseline(const SparseMatrix& laplacian, Eigen::Index k);

struct CmodesResult {
  Matrix modes;  // n x k, orthonormal columns
  ConvergenceTrace trace;
  std::vector<double> support_fraction;  // per mode, at the default threshold
};

// rho = 2 and 3 inner conjugate-gradient iterations per outer pass.
MadmmOptions cmodes_default_options();

// Runs the splitting solver from a seeded random orthonormal initial Phi.
CmodesResult compressed_modes(const SparseMatrix& laplacian, Eigen::Index k,
                              double mu, const MadmmOptions& opts,
                              std::uint64_t seed,
                              const MadmmIterCallback& on_iteration = {});

}  // namespace madmm
