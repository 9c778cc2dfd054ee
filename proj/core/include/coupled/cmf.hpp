#pragma once

#include "coupled/linalg.hpp"
#include "coupled/sketching.hpp"

namespace coupled {

/// Coupled rank-k factors X ~ U V^T, Y ~ U W^T.
struct CmfResult {
  Matrix U;  ///< m x k
  Matrix V;  ///< n1 x k
  Matrix W;  ///< n2 x k
  /// Extra basis columns beyond k used by a randomized variant (0 for basic).
  Index achieved_p = 0;
  /// Sketching plus projected solve, in seconds.
  double elapsed_total_s = 0.0;
  /// Projected solve only (equal to the total for the basic algorithm).
  double elapsed_core_s = 0.0;

  [[nodiscard]] Index rank() const noexcept { return U.cols(); }
};

struct RelativeErrors {
  double x = 0.0;
  double y = 0.0;
  [[nodiscard]] double sum() const noexcept { return x + y; }
};

/// Checks shapes, finiteness and k < min(n1, n2), k <= m.
void check_cmf_arguments(MatrixCRef x, MatrixCRef y, Index k);

/// Direct algorithm: truncated SVD of [X Y]. U holds the leading k left
/// singular vectors and [V; W] = V_k * Sigma_k split after n1 rows.
[[nodiscard]] CmfResult cmf_basic(MatrixCRef x, MatrixCRef y, Index k);

/// Runs the direct algorithm on (Q^T X, Q^T Y) and lifts U = Q * U_hat.
/// Q must have orthonormal columns. Ranks above Q.cols() are padded with zeros.
[[nodiscard]] CmfResult cmf_projected(MatrixCRef x, MatrixCRef y, Index k, MatrixCRef q);

/// Gaussian sketches of X and Y joined by joint_basis (plan.strategy == simple).
[[nodiscard]] CmfResult cmf_randomized(MatrixCRef x, MatrixCRef y, const SketchPlan& plan);

/// Subspace-iteration sketches (plan.strategy == rsi).
[[nodiscard]] CmfResult cmf_rsi(MatrixCRef x, MatrixCRef y, const SketchPlan& plan);

/// Block Krylov sketches (plan.strategy == rbki); requires ell*q >= k.
[[nodiscard]] CmfResult cmf_rbki(MatrixCRef x, MatrixCRef y, const SketchPlan& plan);

/// Dispatches on plan.strategy; `none` runs cmf_basic.
[[nodiscard]] CmfResult cmf(MatrixCRef x, MatrixCRef y, const SketchPlan& plan);

/// ||X - U V^T||_F^2 + ||Y - U W^T||_F^2.
[[nodiscard]] double cmf_objective(MatrixCRef x, MatrixCRef y, const CmfResult& r);

/// (||X - U V^T||_F / ||X||_F, ||Y - U W^T||_F / ||Y||_F).
[[nodiscard]] RelativeErrors relative_errors(MatrixCRef x, MatrixCRef y, const CmfResult& r);

}  // namespace coupled
