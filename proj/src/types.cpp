#include "madmm/types.hpp"

namespace madmm {

double frobenius_inner(const FactorList& a, const FactorList& b) {
  if (a.size() != b.size()) throw DimensionError("frobenius_inner: factor count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols())
      throw DimensionError("frobenius_inner: factor shape mismatch");
    s += a[i].cwiseProduct(b[i]).sum();
  }
  return s;
}

double frobenius_norm(const FactorList& a) {
  double s = 0.0;
  for (const Matrix& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

bool all_finite(const FactorList& ms) {
  for (const Matrix& m : ms)
    if (!m.allFinite()) return false;
  return true;
}

Tangent operator*(double s, const Tangent& t) {
  Tangent r = t;
  for (Matrix& m : r.factors) m *= s;
  return r;
}

Tangent operator+(const Tangent& a, const Tangent& b) {
  if (a.factors.size() != b.factors.size())
    throw DimensionError("Tangent +: factor count mismatch");
  Tangent r = a;
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    if (a.factors[i].rows() != b.factors[i].rows() ||
        a.factors[i].cols() != b.factors[i].cols())
      throw DimensionError("Tangent +: factor shape mismatch");
    r.factors[i] += b.factors[i];
  }
  return r;
}

Tangent operator-(const Tangent& t) { return -1.0 * t; }

}  // namespace madmm
