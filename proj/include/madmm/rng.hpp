#pragma once

#include <cstdint>
#include <random>

#include "madmm/types.hpp"

namespace madmm {

// Standard-normal matrix filled in row-major order so a given engine state
// always produces the same matrix.
inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(gen);
  return m;
}

inline Vector gaussian_vector(Eigen::Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(gen);
  return v;
}

}  // namespace madmm
