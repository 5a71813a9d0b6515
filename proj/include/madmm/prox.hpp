#pragma once

#include <functional>

#include "madmm/types.hpp"

namespace madmm {

// Proximal map (V, tau) -> argmin_Z g(Z) + (1/(2 tau)) ||Z - V||_F^2 for the
// particular g a problem plugs in.
using ProxFn = std::function<Matrix(const Matrix&, double)>;

// Elementwise soft threshold: sign(v) * max(0, |v| - tau). Prox of tau*||.||_1.
Matrix shrink(const Matrix& v, double tau);

// Columnwise group soft threshold: v_j * max(0, 1 - tau/||v_j||_2), with zero
// columns mapped to zero. Prox of tau * (sum of column 2-norms).
Matrix group_shrink_columns(const Matrix& v, double tau);

// Singular value soft threshold: U shrink(Sigma, tau) W'. Prox of the scaled
// nuclear norm.
Matrix svt(const Matrix& v, double tau);

}  // namespace madmm
