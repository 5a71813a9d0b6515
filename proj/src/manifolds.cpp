#include "madmm/manifolds.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "madmm/rng.hpp"

namespace madmm {

Matrix sym_part(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Matrix qr_unique(const Matrix& a) {
  const Eigen::Index k = a.cols();
  if (a.rows() < k) throw DimensionError("qr_unique: need rows >= cols");
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), k);
  Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const double scale = r.diagonal().cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw NumericalError("qr_unique: rank-deficient input");
  for (Eigen::Index j = 0; j < k; ++j) {
    const double d = r(j, j);
    if (std::abs(d) < 1e-12 * scale)
      throw NumericalError("qr_unique: rank-deficient input");
    if (d < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Manifold Manifold::stiefel(Eigen::Index n, Eigen::Index k) {
  if (k < 1 || n < k) throw std::invalid_argument("Stiefel: need n >= k >= 1");
  return Manifold({FactorSpec{FactorKind::Stiefel, n, k}});
}

Manifold Manifold::product_stiefel(const std::vector<Eigen::Index>& rows, Eigen::Index k) {
  if (rows.empty()) throw std::invalid_argument("product_stiefel: need at least one factor");
  std::vector<FactorSpec> specs;
  specs.reserve(rows.size());
  for (Eigen::Index n : rows) {
    if (k < 1 || n < k) throw std::invalid_argument("product_stiefel: need n >= k >= 1");
    specs.push_back(FactorSpec{FactorKind::Stiefel, n, k});
  }
  return Manifold(std::move(specs));
}

Manifold Manifold::psd_fixed_rank_factor(Eigen::Index n, Eigen::Index k) {
  if (k < 1 || n < 1) throw std::invalid_argument("psd_fixed_rank_factor: need n, k >= 1");
  return Manifold({FactorSpec{FactorKind::PsdFactor, n, k}});
}

void Manifold::require_shapes(const FactorList& ms, const char* what) const {
  if (ms.size() != specs_.size())
    throw DimensionError(std::string(what) + ": expected " +
                         std::to_string(specs_.size()) + " factors, got " +
                         std::to_string(ms.size()));
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (ms[i].rows() != specs_[i].rows || ms[i].cols() != specs_[i].cols)
      throw DimensionError(std::string(what) + ": factor " + std::to_string(i) +
                           " has shape " + std::to_string(ms[i].rows()) + "x" +
                           std::to_string(ms[i].cols()) + ", expected " +
                           std::to_string(specs_[i].rows) + "x" +
                           std::to_string(specs_[i].cols));
  }
}

void Manifold::require_point_shapes(const Point& x) const {
  require_shapes(x.factors, "point");
}

Tangent Manifold::project_tangent(const Point& x, const FactorList& ambient) const {
  require_point_shapes(x);
  require_shapes(ambient, "ambient");
  FactorList out;
  out.reserve(specs_.size());
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    switch (specs_[i].kind) {
      case FactorKind::Stiefel: {
        const Matrix& xi = x.factors[i];
        const Matrix& g = ambient[i];
        out.push_back(g - xi * sym_part(xi.transpose() * g));
        break;
      }
      case FactorKind::PsdFactor:
        out.push_back(ambient[i]);
        break;
    }
  }
  return Tangent(std::move(out));
}

Tangent Manifold::riemannian_grad(const Point& x, const FactorList& euclidean_grad) const {
  return project_tangent(x, euclidean_grad);
}

Point Manifold::retract(const Point& x, const Tangent& t) const {
  require_point_shapes(x);
  require_shapes(t.factors, "tangent");
  FactorList out;
  out.reserve(specs_.size());
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    switch (specs_[i].kind) {
      case FactorKind::Stiefel:
        out.push_back(qr_unique(x.factors[i] + t.factors[i]));
        break;
      case FactorKind::PsdFactor:
        out.push_back(x.factors[i] + t.factors[i]);
        break;
    }
  }
  return Point(std::move(out));
}

double Manifold::inner(const Point& x, const Tangent& a, const Tangent& b) const {
  require_point_shapes(x);
  require_shapes(a.factors, "tangent");
  return frobenius_inner(a.factors, b.factors);
}

Point Manifold::random_point(std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  FactorList out;
  out.reserve(specs_.size());
  for (const FactorSpec& spec : specs_) {
    Matrix g = gaussian_matrix(spec.rows, spec.cols, gen);
    if (spec.kind == FactorKind::Stiefel) g = qr_unique(g);
    out.push_back(std::move(g));
  }
  return Point(std::move(out));
}

double Manifold::point_violation(const Point& x) const {
  require_point_shapes(x);
  double v = 0.0;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].kind == FactorKind::Stiefel) {
      const Matrix& xi = x.factors[i];
      const Matrix gram = xi.transpose() * xi;
      v = std::max(v, (gram - Matrix::Identity(gram.rows(), gram.cols())).norm());
    }
  }
  return v;
}

double Manifold::tangent_violation(const Point& x, const Tangent& t) const {
  require_point_shapes(x);
  require_shapes(t.factors, "tangent");
  double v = 0.0;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].kind == FactorKind::Stiefel) {
      const Matrix s = x.factors[i].transpose() * t.factors[i];
      v = std::max(v, (s + s.transpose()).norm());
    }
  }
  return v;
}

}  // namespace madmm
