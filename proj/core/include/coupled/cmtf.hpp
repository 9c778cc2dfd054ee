#pragma once

#include "coupled/cmf.hpp"
#include "coupled/sketching.hpp"
#include "coupled/tensor.hpp"

#include <cstdint>
#include <vector>

namespace coupled {

/// Tucker-form coupled factors: unfold1(X_approx) = U V^T and Y ~ U W^T.
/// V stands for (S x_2 V2 x_3 V3)_(1)^T; its split into core and mode
/// factors is not unique and is never formed.
struct TuckerCmtfResult {
  Tensor3 X_approx;
  Matrix U;  ///< m x k
  Matrix V;  ///< (n2*n3) x k
  Matrix W;  ///< n x k
  Index achieved_p = 0;
  double elapsed_total_s = 0.0;
  double elapsed_core_s = 0.0;
};

/// CP-form coupled factors: X ~ [[U, B, C]], Y ~ U W^T.
struct CpCmtfResult {
  Matrix U;  ///< m x k
  Matrix B;  ///< n2 x k
  Matrix C;  ///< n3 x k
  Matrix W;  ///< n x k
  int iterations = 0;
  bool converged = false;
  /// Objective after each completed ALS sweep (of the projected problem for
  /// the randomized variant).
  std::vector<double> objective_trace;
  Index achieved_p = 0;
  double elapsed_total_s = 0.0;
  double elapsed_core_s = 0.0;
};

enum class AlsInit { random, hosvd };

struct AlsOptions {
  std::uint64_t init_seed = 0;
  int max_iters = 500;
  double rel_tol = 1e-9;
  AlsInit init = AlsInit::random;
};

/// Mode-1 reduction to CMF on (X_(1), Y) with the variant chosen by `plan`,
/// folding U V^T back into a tensor.
[[nodiscard]] TuckerCmtfResult cmtf_tucker(const Tensor3& x, MatrixCRef y, const SketchPlan& plan);

/// Alternating least squares over U, B, C, W (in that order) for
/// ||X - [[U,B,C]]||^2 + ||Y - U W^T||_F^2.
[[nodiscard]] CpCmtfResult cmtf_cp_als(const Tensor3& x, MatrixCRef y, Index k,
                                       const AlsOptions& opts = {});

/// ALS on (X x_1 Q^T, Q^T Y) for a joint sketch basis Q, then U = Q * U_hat.
[[nodiscard]] CpCmtfResult cmtf_cp_als_randomized(const Tensor3& x, MatrixCRef y,
                                                  const SketchPlan& plan,
                                                  const AlsOptions& opts = {});

[[nodiscard]] double cmtf_objective(const Tensor3& x, MatrixCRef y, const TuckerCmtfResult& r);
[[nodiscard]] double cmtf_objective(const Tensor3& x, MatrixCRef y, const CpCmtfResult& r);

[[nodiscard]] RelativeErrors cmtf_errors(const Tensor3& x, MatrixCRef y, const TuckerCmtfResult& r);
[[nodiscard]] RelativeErrors cmtf_errors(const Tensor3& x, MatrixCRef y, const CpCmtfResult& r);

}  // namespace coupled
