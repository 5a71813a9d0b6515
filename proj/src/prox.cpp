#include "madmm/prox.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace madmm {

namespace {
void require_nonnegative(double tau, const char* who) {
  if (!(tau >= 0.0)) throw std::invalid_argument(std::string(who) + ": tau must be >= 0");
}
}  // namespace

Matrix shrink(const Matrix& v, double tau) {
  require_nonnegative(tau, "shrink");
  return v.unaryExpr([tau](double x) {
    const double m = std::abs(x) - tau;
    if (m <= 0.0) return 0.0;
    return x > 0.0 ? m : -m;
  });
}

Matrix group_shrink_columns(const Matrix& v, double tau) {
  require_nonnegative(tau, "group_shrink_columns");
  Matrix out(v.rows(), v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double n = v.col(j).norm();
    if (n > tau && n > 0.0)
      out.col(j) = v.col(j) * (1.0 - tau / n);
    else
      out.col(j).setZero();
  }
  return out;
}

Matrix svt(const Matrix& v, double tau) {
  require_nonnegative(tau, "svt");
  Eigen::BDCSVD<Matrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("svt: SVD did not converge");
  Vector s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(0.0, s(i) - tau);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

}  // namespace madmm
