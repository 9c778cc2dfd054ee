#include "coupled/tensor.hpp"

#include "coupled/errors.hpp"

#include <cmath>
#include <string>

namespace coupled {

namespace {

void check_dims(const Tensor3::Dims& dims) {
  for (Index d : dims) {
    if (d <= 0) throw ShapeError("Tensor3: dimensions must be positive");
  }
}

std::size_t volume(const Tensor3::Dims& dims) {
  return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
         static_cast<std::size_t>(dims[2]);
}

void check_mode(int mode) {
  if (mode < 1 || mode > 3) {
    throw ParameterError("tensor mode must be 1, 2 or 3, got " + std::to_string(mode));
  }
}

}  // namespace

Tensor3::Tensor3(Dims dims) : dims_(dims) {
  check_dims(dims_);
  data_.assign(volume(dims_), 0.0);
}

Tensor3::Tensor3(Dims dims, std::vector<double> entries) : dims_(dims), data_(std::move(entries)) {
  check_dims(dims_);
  if (data_.size() != volume(dims_)) {
    throw ShapeError("Tensor3: entry count " + std::to_string(data_.size()) +
                     " does not match dimensions");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw ParameterError("Tensor3 contains a non-finite entry");
  }
}

Index Tensor3::dim(int mode) const {
  check_mode(mode);
  return dims_[static_cast<std::size_t>(mode - 1)];
}

Eigen::Map<const Matrix> Tensor3::unfold1_view() const {
  return {data_.data(), dims_[0], dims_[1] * dims_[2]};
}

Matrix unfold1(const Tensor3& t) { return t.unfold1_view(); }

Matrix unfold(const Tensor3& t, int mode) {
  check_mode(mode);
  const auto [n1, n2, n3] = t.dims();
  switch (mode) {
    case 1:
      return unfold1(t);
    case 2: {
      Matrix m(n2, n1 * n3);
      for (Index l = 0; l < n3; ++l)
        for (Index j = 0; j < n2; ++j)
          for (Index i = 0; i < n1; ++i) m(j, i + l * n1) = t(i, j, l);
      return m;
    }
    default: {
      Matrix m(n3, n1 * n2);
      for (Index l = 0; l < n3; ++l)
        for (Index j = 0; j < n2; ++j)
          for (Index i = 0; i < n1; ++i) m(l, i + j * n1) = t(i, j, l);
      return m;
    }
  }
}

Tensor3 fold1(MatrixCRef m, const Tensor3::Dims& dims) { return fold(m, 1, dims); }

Tensor3 fold(MatrixCRef m, int mode, const Tensor3::Dims& dims) {
  check_mode(mode);
  check_dims(dims);
  const auto [n1, n2, n3] = dims;
  const Index rows = dims[static_cast<std::size_t>(mode - 1)];
  const Index cols = n1 * n2 * n3 / rows;
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError("fold: a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     " matrix does not match the mode-" + std::to_string(mode) + " unfolding of (" +
                     std::to_string(n1) + "," + std::to_string(n2) + "," + std::to_string(n3) + ")");
  }
  Tensor3 t(dims);
  for (Index l = 0; l < n3; ++l)
    for (Index j = 0; j < n2; ++j)
      for (Index i = 0; i < n1; ++i) {
        switch (mode) {
          case 1: t(i, j, l) = m(i, j + l * n2); break;
          case 2: t(i, j, l) = m(j, i + l * n1); break;
          default: t(i, j, l) = m(l, i + j * n1); break;
        }
      }
  return t;
}

Tensor3 mode_product(const Tensor3& t, MatrixCRef m, int mode) {
  check_mode(mode);
  if (m.cols() != t.dim(mode)) {
    throw ShapeError("mode_product: matrix has " + std::to_string(m.cols()) +
                     " columns but mode " + std::to_string(mode) + " has dimension " +
                     std::to_string(t.dim(mode)));
  }
  Tensor3::Dims out = t.dims();
  out[static_cast<std::size_t>(mode - 1)] = m.rows();
  if (mode == 1) {
    Matrix prod = m * t.unfold1_view();
    return Tensor3(out, std::vector<double>(prod.data(), prod.data() + prod.size()));
  }
  return fold(m * unfold(t, mode), mode, out);
}

Tensor3 cp_reconstruct(MatrixCRef a, MatrixCRef b, MatrixCRef c) {
  if (a.cols() != b.cols() || a.cols() != c.cols()) {
    throw ShapeError("cp_reconstruct: factors must share their column count");
  }
  Matrix x1 = a * khatri_rao(c, b).transpose();
  return Tensor3({a.rows(), b.rows(), c.rows()},
                 std::vector<double>(x1.data(), x1.data() + x1.size()));
}

double tensor_norm(const Tensor3& t) { return frobenius_norm(t.unfold1_view()); }

}  // namespace coupled
