#include "coupled/testgen.hpp"

#include "coupled/errors.hpp"
#include "coupled/random.hpp"
#include "coupled/sketching.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coupled::testgen {

namespace {

// Generators draw from their own stream so that an instance and a sketch or
// ALS start built from the same user seed are not made of the same numbers.
constexpr std::uint64_t kGeneratorStream = 0x67656e;

std::uint64_t generator_seed(std::uint64_t seed) { return derive_seed(seed, kGeneratorStream); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

void require_positive(std::initializer_list<Index> dims, const char* family) {
  for (const Index d : dims) require(d > 0, std::string(family) + ": dimensions must be positive");
}

// Orthonormal columns spanning a uniform random matrix.
Matrix orth_uniform(Index rows, Index cols, Rng& rng) {
  return thin_qr(uniform(rows, cols, rng)).Q;
}

// `cols` orthonormal columns orthogonal to the orthonormal columns of `shared`.
Matrix orth_complement(const Matrix& shared, Index cols, Rng& rng) {
  Matrix g = uniform(shared.rows(), cols, rng);
  for (int pass = 0; pass < 2; ++pass) g -= shared * (shared.transpose() * g);
  return thin_qr(g).Q;
}

// [shared.leftCols(c), orth_complement] with `total` columns.
Matrix extend_basis(const Matrix& basis, Index c, Index total, Rng& rng) {
  Matrix out(basis.rows(), total);
  out.leftCols(c) = basis.leftCols(c);
  if (total > c) out.rightCols(total - c) = orth_complement(basis.leftCols(c), total - c, rng);
  return out;
}

Vector halving_spectrum(Index count) {
  Vector s(count);
  for (Index i = 0; i < count; ++i) s(i) = std::ldexp(1.0, -static_cast<int>(i));
  return s;
}

}  // namespace

Matrix sparse_uniform(Index rows, Index cols, double density, Rng& rng) {
  require(density >= 0.0 && density <= 1.0, "sparse_uniform: density must lie in [0, 1]");
  Matrix out = Matrix::Zero(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      if (rng.uniform() < density) out(i, j) = rng.uniform();
    }
  }
  return out;
}

MatrixPair synthetic1(Index m, Index n1, Index n2, Index r1, Index r2, std::uint64_t seed) {
  require_positive({m, n1, n2, r1, r2}, "synthetic1");
  require(r1 <= std::min(m, n1), "synthetic1: r1 must not exceed min(m, n1)");
  require(r2 <= std::min(m, n2), "synthetic1: r2 must not exceed min(m, n2)");
  Rng rng(generator_seed(seed));
  MatrixPair out;
  const Matrix a = uniform(m, r1, rng);
  const Matrix b = uniform(r1, n1, rng);
  out.X = a * b;
  const Matrix c = uniform(m, r2, rng);
  const Matrix d = uniform(r2, n2, rng);
  out.Y = c * d;
  return out;
}

MatrixPair synthetic2(Index n, Index r, double d, Index c, std::uint64_t seed) {
  require_positive({n, r}, "synthetic2");
  require(r <= n, "synthetic2: r must not exceed n");
  require(c >= 0 && c <= n, "synthetic2: c must lie in [0, n]");
  require(std::isfinite(d) && d >= 1.0, "synthetic2: d must be at least 1");
  Rng rng(generator_seed(seed));
  const Matrix ux = orth_uniform(n, n, rng);
  const Matrix vx = orth_uniform(n, n, rng);
  Vector sx(n);
  for (Index i = 0; i < n; ++i) {
    sx(i) = i < r ? 1.0 : std::pow(static_cast<double>(i - r + 2), -d);
  }
  Vector sy = Vector::Zero(n);
  for (Index i = 0; i < std::min(r, n); ++i) sy(i) = 1.0;
  for (Index j = 2; j <= n - 2 * r + 1; ++j) sy(r + j - 2) = 1.0 / static_cast<double>(j);
  const Matrix uy = extend_basis(ux, c, n, rng);
  const Matrix vy = extend_basis(vx, c, n, rng);
  MatrixPair out;
  out.X = ux * sx.asDiagonal() * vx.transpose();
  out.Y = uy * sy.asDiagonal() * vy.transpose();
  return out;
}

MatrixPair synthetic3(Index m, Index n, Index r, std::uint64_t seed) {
  require_positive({m, n, r}, "synthetic3");
  require(r <= std::min(m, n), "synthetic3: r must not exceed min(m, n)");
  constexpr double kDensity = 0.25;
  const Index terms = std::min(m, n);
  Rng rng(generator_seed(seed));
  const Matrix head_left = sparse_uniform(m, r, kDensity, rng);
  const Matrix head_right = sparse_uniform(n, r, kDensity, rng);
  Vector head_w(r);
  for (Index j = 0; j < r; ++j) head_w(j) = 10.0 / static_cast<double>(j + 1);
  Vector tail_w(terms - r);
  for (Index j = r; j < terms; ++j) tail_w(j - r) = 1.0 / static_cast<double>(j + 1);
  const Matrix head = head_left * head_w.asDiagonal() * head_right.transpose();

  MatrixPair out;
  for (Matrix* target : {&out.X, &out.Y}) {
    const Matrix tail_left = sparse_uniform(m, terms - r, kDensity, rng);
    const Matrix tail_right = sparse_uniform(n, terms - r, kDensity, rng);
    *target = head + tail_left * tail_w.asDiagonal() * tail_right.transpose();
  }
  return out;
}

MatrixPair synthetic4(Index m, Index n1, Index n2, Index r2, std::uint64_t seed) {
  require_positive({m, n1, n2, r2}, "synthetic4");
  require(n1 <= m, "synthetic4: n1 must not exceed m");
  require(r2 <= std::min(m, n2), "synthetic4: r2 must not exceed min(m, n2)");
  Rng rng(generator_seed(seed));
  const Matrix u = orth_uniform(m, m, rng);
  Vector s(n1);
  for (Index i = 0; i < n1; ++i) s(i) = std::ldexp(1.0, -static_cast<int>(i + 1));
  MatrixPair out;
  out.X = u.leftCols(n1) * s.asDiagonal();
  const Matrix a = uniform(m, r2, rng);
  const Matrix b = uniform(r2, n2, rng);
  out.Y = a * b;
  return out;
}

MatrixPair synthetic5(Index m, Index n1, Index n2, Index shared, std::uint64_t seed) {
  require_positive({m, n1, n2}, "synthetic5");
  require(shared >= 0 && shared <= std::min(n1, n2), "synthetic5: shared must lie in [0, min(n1, n2)]");
  require(std::max(n1, n2) <= m, "synthetic5: n1 and n2 must not exceed m");
  Rng rng(generator_seed(seed));
  const Matrix ua = orth_uniform(m, m, rng);
  const Matrix ub = extend_basis(ua, shared, m, rng);
  MatrixPair out;
  out.X = ua.leftCols(n1) * halving_spectrum(n1).asDiagonal();
  out.Y = ub.leftCols(n2) * halving_spectrum(n2).asDiagonal();
  return out;
}

TensorMatrixPair tensor_test(Index n, Index r, double d, Index r1, Index r2, Index r3,
                             std::uint64_t seed) {
  require_positive({n, r}, "tensor_test");
  require(r <= n, "tensor_test: r must not exceed n");
  require(std::min({r1, r2, r3}) >= 0 && std::max({r1, r2, r3}) <= n,
          "tensor_test: r1, r2, r3 must lie in [0, n]");
  require(std::isfinite(d) && d > 0.0, "tensor_test: d must be positive");
  Rng rng(generator_seed(seed));
  const Matrix uy = orth_uniform(n, n, rng);
  const Matrix vy = orth_uniform(n, n, rng);
  Vector s(n);
  for (Index i = 0; i < n; ++i) {
    s(i) = i < r ? 1.0 : std::pow(d, -static_cast<double>(i - r + 2));
  }
  TensorMatrixPair out{Tensor3({n, n, 3}), uy * s.asDiagonal() * vy.transpose()};
  const Index shared[3] = {r1, r2, r3};
  for (Index l = 0; l < 3; ++l) {
    const Matrix left = extend_basis(uy, shared[l], n, rng);
    const Matrix right = extend_basis(vy, shared[l], n, rng);
    const Matrix slice = left * s.asDiagonal() * right.transpose();
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) out.T(i, j, l) = slice(i, j);
  }
  return out;
}

TensorMatrixPair planted_cp(Index m, Index n2, Index n3, Index n, Index r, std::uint64_t seed) {
  require_positive({m, n2, n3, n, r}, "planted_cp");
  require(r <= std::min({m, n2, n3, n}), "planted_cp: r must not exceed any dimension");
  Rng rng(generator_seed(seed));
  const Matrix u = gaussian(m, r, rng);
  const Matrix b = gaussian(n2, r, rng);
  const Matrix c = gaussian(n3, r, rng);
  const Matrix w = gaussian(n, r, rng);
  return {cp_reconstruct(u, b, c), u * w.transpose()};
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::synthetic1: return "synthetic1";
    case Family::synthetic2: return "synthetic2";
    case Family::synthetic3: return "synthetic3";
    case Family::synthetic4: return "synthetic4";
    case Family::synthetic5: return "synthetic5";
    case Family::tensor_test: return "tensor_test";
    case Family::planted_cp: return "planted_cp";
  }
  return "synthetic1";
}

Family parse_family(std::string_view name) {
  for (const Family f : {Family::synthetic1, Family::synthetic2, Family::synthetic3,
                         Family::synthetic4, Family::synthetic5, Family::tensor_test,
                         Family::planted_cp}) {
    const std::string_view canonical = to_string(f);
    std::string dashed(canonical);
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    if (name == canonical || name == dashed) return f;
  }
  throw ParameterError("unknown instance family '" + std::string(name) + "'");
}

void InstanceSpec::validate() const {
  switch (family) {
    case Family::synthetic1:
      require_positive({m, n1, n2, r1, r2}, "synthetic1");
      require(r1 <= std::min(m, n1) && r2 <= std::min(m, n2),
              "synthetic1: ranks must not exceed the matrix dimensions");
      break;
    case Family::synthetic2:
      require_positive({n, r}, "synthetic2");
      require(r <= n && c >= 0 && c <= n, "synthetic2: needs r <= n and 0 <= c <= n");
      require(std::isfinite(d) && d >= 1.0, "synthetic2: d must be at least 1");
      break;
    case Family::synthetic3:
      require_positive({m, n, r}, "synthetic3");
      require(r <= std::min(m, n), "synthetic3: r must not exceed min(m, n)");
      break;
    case Family::synthetic4:
      require_positive({m, n1, n2, r2}, "synthetic4");
      require(n1 <= m && r2 <= std::min(m, n2), "synthetic4: needs n1 <= m and r2 <= min(m, n2)");
      break;
    case Family::synthetic5:
      require_positive({m, n1, n2}, "synthetic5");
      require(c >= 0 && c <= std::min(n1, n2) && std::max(n1, n2) <= m,
              "synthetic5: needs 0 <= shared <= min(n1, n2) and n1, n2 <= m");
      break;
    case Family::tensor_test:
      require_positive({n, r}, "tensor_test");
      require(r <= n && std::min({r1, r2, r3}) >= 0 && std::max({r1, r2, r3}) <= n,
              "tensor_test: needs r, r1, r2, r3 <= n");
      require(std::isfinite(d) && d > 0.0, "tensor_test: d must be positive");
      break;
    case Family::planted_cp:
      require_positive({m, n2, n3, n, r}, "planted_cp");
      require(r <= std::min({m, n2, n3, n}), "planted_cp: r must not exceed any dimension");
      break;
  }
}

Instance generate(const InstanceSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::synthetic1:
      return synthetic1(spec.m, spec.n1, spec.n2, spec.r1, spec.r2, spec.seed);
    case Family::synthetic2: return synthetic2(spec.n, spec.r, spec.d, spec.c, spec.seed);
    case Family::synthetic3: return synthetic3(spec.m, spec.n, spec.r, spec.seed);
    case Family::synthetic4: return synthetic4(spec.m, spec.n1, spec.n2, spec.r2, spec.seed);
    case Family::synthetic5: return synthetic5(spec.m, spec.n1, spec.n2, spec.c, spec.seed);
    case Family::tensor_test:
      return tensor_test(spec.n, spec.r, spec.d, spec.r1, spec.r2, spec.r3, spec.seed);
    case Family::planted_cp:
      return planted_cp(spec.m, spec.n2, spec.n3, spec.n, spec.r, spec.seed);
  }
  throw ParameterError("unknown instance family");
}

}  // namespace coupled::testgen
