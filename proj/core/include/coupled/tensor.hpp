#pragma once

#include "coupled/linalg.hpp"

#include <array>
#include <span>
#include <vector>

namespace coupled {

/// Dense real order-3 tensor.
///
/// Entry (i, j, l) lives at linear offset i + n1*(j + n2*l), which makes the
/// storage identical to the column-major mode-1 unfolding (column j + l*n2).
class Tensor3 {
 public:
  using Dims = std::array<Index, 3>;

  Tensor3() = default;
  /// Zero tensor of the given dimensions.
  explicit Tensor3(Dims dims);
  /// Takes entries in the mode-1 linearization; rejects non-finite values.
  Tensor3(Dims dims, std::vector<double> entries);

  [[nodiscard]] const Dims& dims() const noexcept { return dims_; }
  /// Dimension of `mode` (1, 2 or 3).
  [[nodiscard]] Index dim(int mode) const;
  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(data_.size()); }

  [[nodiscard]] double operator()(Index i, Index j, Index l) const {
    return data_[static_cast<std::size_t>(i + dims_[0] * (j + dims_[1] * l))];
  }
  [[nodiscard]] double& operator()(Index i, Index j, Index l) {
    return data_[static_cast<std::size_t>(i + dims_[0] * (j + dims_[1] * l))];
  }

  [[nodiscard]] std::span<const double> entries() const noexcept { return data_; }
  [[nodiscard]] std::span<double> entries() noexcept { return data_; }

  /// Zero-copy view of the mode-1 unfolding (n1 x n2*n3).
  [[nodiscard]] Eigen::Map<const Matrix> unfold1_view() const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims dims_{0, 0, 0};
  std::vector<double> data_;
};

/// Mode-1 matricization, n1 x (n2*n3), column j + l*n2.
[[nodiscard]] Matrix unfold1(const Tensor3& t);

/// Mode-n matricization. Column orderings: mode 2 uses i + l*n1,
/// mode 3 uses i + j*n1.
[[nodiscard]] Matrix unfold(const Tensor3& t, int mode);

/// Inverse of unfold1 for the given dimensions.
[[nodiscard]] Tensor3 fold1(MatrixCRef m, const Tensor3::Dims& dims);

/// Inverse of unfold(., mode) for the given dimensions.
[[nodiscard]] Tensor3 fold(MatrixCRef m, int mode, const Tensor3::Dims& dims);

/// T x_mode M: every mode-`mode` fiber multiplied by M.
[[nodiscard]] Tensor3 mode_product(const Tensor3& t, MatrixCRef m, int mode);

/// [[A, B, C]] = sum_t a_t o b_t o c_t.
[[nodiscard]] Tensor3 cp_reconstruct(MatrixCRef a, MatrixCRef b, MatrixCRef c);

[[nodiscard]] double tensor_norm(const Tensor3& t);

}  // namespace coupled
