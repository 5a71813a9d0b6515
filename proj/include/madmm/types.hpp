#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <utility>
#include <vector>

namespace madmm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// One dense block per manifold factor. Single-factor manifolds (Stiefel, the
// PSD low-rank factor) use a list of size one.
using FactorList = std::vector<Matrix>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point on a (product) manifold.
struct Point {
  FactorList factors;

  Point() = default;
  explicit Point(Matrix single) { factors.push_back(std::move(single)); }
  explicit Point(FactorList fs) : factors(std::move(fs)) {}

  // Convenience accessors for the common single-factor case.
  const Matrix& mat() const { return factors.front(); }
  Matrix& mat() { return factors.front(); }
};

// A tangent vector, stored in the same per-factor layout as Point.
struct Tangent {
  FactorList factors;

  Tangent() = default;
  explicit Tangent(Matrix single) { factors.push_back(std::move(single)); }
  explicit Tangent(FactorList fs) : factors(std::move(fs)) {}
};

double frobenius_inner(const FactorList& a, const FactorList& b);
double frobenius_norm(const FactorList& a);

bool all_finite(const Matrix& m);
bool all_finite(const FactorList& ms);

Tangent operator*(double s, const Tangent& t);
Tangent operator+(const Tangent& a, const Tangent& b);
Tangent operator-(const Tangent& t);

}  // namespace madmm
