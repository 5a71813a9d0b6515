#pragma once

#include <cstdint>

#include "madmm/madmm.hpp"

namespace madmm {

// Robust Euclidean embedding: minimize ||D - dist(Y Y')||_1 over a rank-k
// factor Y, where D holds squared dissimilarities. The entrywise L1 misfit
// tolerates grossly corrupted entries that ruin classical (least-squares)
// multidimensional scaling.

// Throws unless D is square, symmetric, nonnegative with a zero diagonal.
void validate_distance_matrix(const Matrix& d);

// -1/2 H D H with H = I - (1/n) 1 1'.
Matrix double_center(const Matrix& d);

// dist(B)_ij = b_ii + b_jj - 2 b_ij (squared distances of the Gram matrix B).
Matrix dist_from_gram(const Matrix& b);

// Adjoint of dist on symmetric matrices: with Rt = (R + R')/2,
// adjoint(R)_ij = delta_ij * 2 * sum_l Rt_il - 2 Rt_ij.
Matrix dist_adjoint(const Matrix& r);

// Top-k spectral embedding of -1/2 H D H with negative eigenvalues clamped
// to zero; columns ordered by decreasing eigenvalue.
Matrix classical_mds(const Matrix& d, Eigen::Index k);

// Seeded planar point cloud, uniform on a 2:1 rectangle. Returns n x 2.
Matrix planar_config(Eigen::Index n, std::uint64_t seed);

Matrix squared_distance_matrix(const Matrix& points);

// Scales the squared dissimilarity of floor(frac * n(n-1)/2) seeded pairs by
// factor^2 (distances multiplied by `factor`), keeping symmetry.
Matrix outlier_contaminate(const Matrix& d, double frac, double factor, std::uint64_t seed);

// Root-mean-square distance after optimal translation and
// rotation/reflection alignment (no scaling).
double procrustes_rms(const Matrix& x, const Matrix& x_ref);

struct ReeResult {
  Matrix embedding;  // n x k factor Y; the recovered Gram matrix is Y Y'
  ConvergenceTrace trace;
};

// rho = 10 and 2 inner conjugate-gradient iterations per outer pass.
MadmmOptions ree_default_options();

// Splitting solver over the factor Y, started from classical MDS unless an
// initial embedding is supplied.
ReeResult ree_solve(const Matrix& d, Eigen::Index k, const MadmmOptions& opts,
                    const MadmmIterCallback& on_iteration = {},
                    const Matrix* initial = nullptr);

}  // namespace madmm
