#pragma once

#include "coupled/linalg.hpp"
#include "coupled/random.hpp"

#include <cstdint>
#include <string_view>

namespace coupled {

enum class Strategy { none, simple, rsi, rbki };

[[nodiscard]] std::string_view to_string(Strategy s) noexcept;
/// Accepts "none"/"basic", "simple"/"randomized", "rsi", "rbki".
[[nodiscard]] Strategy parse_strategy(std::string_view name);

inline constexpr double kDefaultTruncTol = 1e-10;

/// How the projection basis for a coupled problem is built.
struct SketchPlan {
  Strategy strategy = Strategy::none;
  Index k = 1;       ///< target rank
  int q = 1;         ///< RSI iteration count / RBKI Krylov depth
  Index ell = 1;     ///< RBKI block size
  std::uint64_t seed = 0;
  double trunc_tol = kDefaultTruncTol;

  /// Throws ParameterError when k, q, ell or trunc_tol are out of range.
  void validate() const;

  static SketchPlan basic(Index k) { return {Strategy::none, k}; }
  static SketchPlan simple(Index k, std::uint64_t seed) { return {Strategy::simple, k, 1, 1, seed}; }
  static SketchPlan rsi(Index k, int q, std::uint64_t seed) { return {Strategy::rsi, k, q, 1, seed}; }
  static SketchPlan rbki(Index k, Index ell, int q, std::uint64_t seed) {
    return {Strategy::rbki, k, q, ell, seed};
  }
};

struct ThinQr {
  Matrix Q;  ///< rows x cols, orthonormal columns
  Matrix R;  ///< cols x cols, upper triangular
};

/// Householder thin QR; requires rows >= cols.
[[nodiscard]] ThinQr thin_qr(MatrixCRef a);

/// Orthonormal basis of a subspace of range(Q1) + range(Q2).
struct JointBasis {
  Matrix Q;
  Index effective_cols = 0;
};

/// Column-pivoted QR of [Q1 Q2]; pivots with |R_ii| < trunc_tol * |R_11| are
/// dropped and the leading Householder vectors form the basis.
[[nodiscard]] JointBasis joint_basis(MatrixCRef q1, MatrixCRef q2,
                                     double trunc_tol = kDefaultTruncTol);

/// Q factor of X * Omega for a fresh n x k Gaussian Omega.
[[nodiscard]] Matrix simple_basis(MatrixCRef x, Index k, Rng& rng);

/// Randomized subspace iteration: for i = 1..q, Q = qr(X * Omega).Q, Omega = X^T Q.
[[nodiscard]] Matrix rsi_basis(MatrixCRef x, Index k, int q, Rng& rng);

/// Randomized block Krylov iteration with block size `ell` and depth `q`.
///
/// Each new block A * Omega_{i-1} is orthogonalized against the earlier blocks
/// by two block Gram-Schmidt passes and then by a thin QR; the result is the
/// m x (ell*q) orthonormal basis of K_q(A A^T; A Omega_0).
[[nodiscard]] Matrix rbki_basis(MatrixCRef a, Index ell, int q, Rng& rng);

/// Basis for one matrix according to the plan's strategy (not `none`).
[[nodiscard]] Matrix sketch_basis(MatrixCRef a, const SketchPlan& plan, Rng& rng);

/// Joint basis for a coupled pair: sketch X, then Y, from one generator
/// seeded with plan.seed, then reorthogonalize [Q1 Q2].
[[nodiscard]] JointBasis coupled_basis(MatrixCRef x, MatrixCRef y, const SketchPlan& plan);

}  // namespace coupled
