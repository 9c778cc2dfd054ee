#include "coupled/linalg.hpp"

#include "coupled/errors.hpp"

#include <cmath>
#include <string>

namespace coupled {

void require_finite(MatrixCRef m, std::string_view what) {
  if (!m.allFinite()) {
    throw ParameterError(std::string(what) + " contains a non-finite entry");
  }
}

namespace {

long double sum_of_squares(MatrixCRef m) {
  long double acc = 0.0L;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const long double v = m(i, j);
      acc += v * v;
    }
  }
  return acc;
}

}  // namespace

// The root is taken before narrowing so tiny entries do not underflow to zero.
double frobenius_norm(MatrixCRef m) { return static_cast<double>(std::sqrt(sum_of_squares(m))); }

double squared_norm(MatrixCRef m) { return static_cast<double>(sum_of_squares(m)); }

Matrix hadamard(MatrixCRef a, MatrixCRef b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("hadamard: operands must have the same shape");
  }
  return a.cwiseProduct(b);
}

Matrix khatri_rao(MatrixCRef a, MatrixCRef b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("khatri_rao: operands must have the same column count");
  }
  const Index p = b.rows();
  Matrix out(a.rows() * p, a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index ia = 0; ia < a.rows(); ++ia) {
      out.col(j).segment(ia * p, p) = a(ia, j) * b.col(j);
    }
  }
  return out;
}

DiagSpectrum::DiagSpectrum(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw ParameterError("DiagSpectrum: values must be finite and non-negative");
    }
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw ParameterError("DiagSpectrum: values must be non-increasing");
    }
  }
}

double DiagSpectrum::tail_energy(std::size_t k) const {
  long double acc = 0.0L;
  for (std::size_t i = k; i < values_.size(); ++i) {
    acc += static_cast<long double>(values_[i]) * values_[i];
  }
  return static_cast<double>(acc);
}

}  // namespace coupled
