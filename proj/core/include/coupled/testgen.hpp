#pragma once

#include "coupled/linalg.hpp"
#include "coupled/random.hpp"
#include "coupled/tensor.hpp"

#include <cstdint>
#include <string_view>
#include <variant>

namespace coupled::testgen {

struct MatrixPair {
  Matrix X;
  Matrix Y;
};

struct TensorMatrixPair {
  Tensor3 T;
  Matrix Y;
};

/// Each entry is nonzero with probability `density`; nonzeros are uniform on
/// [0, 1). Columns are the sparse random vectors of synthetic3.
[[nodiscard]] Matrix sparse_uniform(Index rows, Index cols, double density, Rng& rng);

/// X = rand(m,r1)*rand(r1,n1), Y = rand(m,r2)*rand(r2,n2).
[[nodiscard]] MatrixPair synthetic1(Index m, Index n1, Index n2, Index r1, Index r2,
                                    std::uint64_t seed);

/// n x n pair with r unit singular values followed by j^-d decay for X and
/// j^-1 decay for Y; the first c left and right singular vectors are shared.
[[nodiscard]] MatrixPair synthetic2(Index n, Index r, double d, Index c, std::uint64_t seed);

/// Sums of sparse outer products, weights 10/j for the r shared leading
/// terms and 1/j for independent tails up to min(m, n).
[[nodiscard]] MatrixPair synthetic3(Index m, Index n, Index r, std::uint64_t seed);

/// X = orth(m x n1) * diag(2^-i), Y = rand(m,r2)*rand(r2,n2).
[[nodiscard]] MatrixPair synthetic4(Index m, Index n1, Index n2, Index r2, std::uint64_t seed);

/// Both spectra 2^-(i-1); the left factors share their first `shared` columns.
[[nodiscard]] MatrixPair synthetic5(Index m, Index n1, Index n2, Index shared,
                                    std::uint64_t seed);

/// n x n matrix Y with spectrum S = diag(1,..,1, d^-2, ..., d^-(n-r+1)) and an
/// n x n x 3 tensor whose frontal slice l shares r_l singular directions with Y.
[[nodiscard]] TensorMatrixPair tensor_test(Index n, Index r, double d, Index r1, Index r2,
                                           Index r3, std::uint64_t seed);

/// T = [[U,B,C]], Y = U W^T with standard normal factors of rank r.
[[nodiscard]] TensorMatrixPair planted_cp(Index m, Index n2, Index n3, Index n, Index r,
                                          std::uint64_t seed);

enum class Family { synthetic1, synthetic2, synthetic3, synthetic4, synthetic5, tensor_test, planted_cp };

[[nodiscard]] std::string_view to_string(Family f) noexcept;
[[nodiscard]] Family parse_family(std::string_view name);

/// Family selector plus the union of all family parameters.
struct InstanceSpec {
  Family family = Family::synthetic1;
  Index m = 0, n = 0, n1 = 0, n2 = 0, n3 = 0;
  Index r = 0, r1 = 0, r2 = 0, r3 = 0;
  Index c = 0;
  double d = 2.0;
  std::uint64_t seed = 0;

  /// Throws ParameterError when the family's constraints are violated.
  void validate() const;
};

using Instance = std::variant<MatrixPair, TensorMatrixPair>;

[[nodiscard]] Instance generate(const InstanceSpec& spec);

}  // namespace coupled::testgen
