#pragma once

#include <cstdint>
#include <vector>

#include "madmm/types.hpp"

namespace madmm {

enum class FactorKind {
  Stiefel,    // n x k with orthonormal columns, X'X = I
  PsdFactor,  // free n x k factor Y parameterizing B = YY' (PSD, rank <= k)
};

struct FactorSpec {
  FactorKind kind;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

// Embedded-geometry description of the constraint sets the solvers run on.
// All factors use the Frobenius metric of the ambient space. Stiefel factors
// get the usual tangent projection T = G - X sym(X'G) and a thin-QR
// retraction; the PSD factor is an unconstrained matrix, so projection is the
// identity and retraction is plain addition.
class Manifold {
 public:
  static Manifold stiefel(Eigen::Index n, Eigen::Index k);
  static Manifold product_stiefel(const std::vector<Eigen::Index>& rows, Eigen::Index k);
  static Manifold psd_fixed_rank_factor(Eigen::Index n, Eigen::Index k);

  const std::vector<FactorSpec>& factors() const { return specs_; }
  std::size_t num_factors() const { return specs_.size(); }

  Tangent project_tangent(const Point& x, const FactorList& ambient) const;

  // Riemannian gradient from a Euclidean one; with the embedded metric this
  // is exactly the tangent projection.
  Tangent riemannian_grad(const Point& x, const FactorList& euclidean_grad) const;

  // Throws NumericalError if a Stiefel factor X + T is rank deficient.
  Point retract(const Point& x, const Tangent& t) const;

  double inner(const Point& x, const Tangent& a, const Tangent& b) const;

  Point random_point(std::uint64_t seed) const;

  // Max constraint residual over factors (||X'X - I||_F on Stiefel factors,
  // 0 for the free PSD factor).
  double point_violation(const Point& x) const;

  // Max of ||X'T + T'X||_F over Stiefel factors.
  double tangent_violation(const Point& x, const Tangent& t) const;

  void require_point_shapes(const Point& x) const;
  void require_shapes(const FactorList& ms, const char* what) const;

 private:
  explicit Manifold(std::vector<FactorSpec> specs) : specs_(std::move(specs)) {}

  std::vector<FactorSpec> specs_;
};

Matrix sym_part(const Matrix& a);

// Thin QR factor with the diagonal of R forced positive, making Q unique.
// Throws NumericalError when the input is (numerically) rank deficient.
Matrix qr_unique(const Matrix& a);

}  // namespace madmm
