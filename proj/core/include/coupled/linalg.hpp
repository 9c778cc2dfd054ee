#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace coupled {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using MatrixCRef = Eigen::Ref<const Matrix>;

/// Throws ParameterError naming `what` if any entry is NaN or infinite.
void require_finite(MatrixCRef m, std::string_view what);

[[nodiscard]] double frobenius_norm(MatrixCRef m);

/// Sum of squared entries accumulated in extended precision.
[[nodiscard]] double squared_norm(MatrixCRef m);

/// Entrywise product of two equally shaped matrices.
[[nodiscard]] Matrix hadamard(MatrixCRef a, MatrixCRef b);

/// Columnwise Kronecker product: column j of the result is a_j (x) b_j,
/// so row (ia * b.rows() + ib) holds a(ia, j) * b(ib, j).
[[nodiscard]] Matrix khatri_rao(MatrixCRef a, MatrixCRef b);

/// Singular values in non-increasing order.
class DiagSpectrum {
 public:
  DiagSpectrum() = default;
  explicit DiagSpectrum(std::vector<double> values);

  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  /// Sum of squares of the values past the first `k`.
  [[nodiscard]] double tail_energy(std::size_t k) const;

 private:
  std::vector<double> values_;
};

}  // namespace coupled
