#include "coupled/cmtf.hpp"

#include "coupled/errors.hpp"
#include "coupled/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace coupled {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kGramCondLimit = 1e12;
constexpr double kExactFloor = 1e-24;
constexpr std::uint64_t kInitStream = 0x616c73;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_coupling(const Tensor3& x, MatrixCRef y) {
  if (x.size() == 0) throw ShapeError("tensor must be non-empty");
  if (y.rows() != x.dim(1)) {
    throw ShapeError("Y has " + std::to_string(y.rows()) + " rows but the tensor's first mode is " +
                     std::to_string(x.dim(1)));
  }
  require_finite(y, "Y");
}

void check_cp_rank(const Tensor3& x, MatrixCRef y, Index k) {
  const Index bound = std::min({x.dim(2), x.dim(3), y.cols()});
  if (k < 1 || k >= bound) {
    throw ParameterError("CP rank k = " + std::to_string(k) + " needs 1 <= k < min(n2, n3, n) = " +
                         std::to_string(bound));
  }
}

// Returns M * G^{-1} for a symmetric positive semidefinite Gram matrix G.
Matrix solve_gram(const Matrix& g, const Matrix& m, const char* factor, int iteration) {
  if (!g.allFinite() || !m.allFinite()) throw DegenerateIterate(factor, iteration);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  const Vector& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  if (!(top > 0.0)) throw DegenerateIterate(factor, iteration);
  Matrix out;
  if (lambda.minCoeff() * kGramCondLimit >= top) {
    out = g.llt().solve(m.transpose()).transpose();
  } else {
    Vector inv = Vector::Zero(lambda.size());
    for (Index i = 0; i < lambda.size(); ++i) {
      if (lambda(i) * kGramCondLimit > top) inv(i) = 1.0 / lambda(i);
    }
    out = m * eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  }
  if (!out.allFinite()) throw DegenerateIterate(factor, iteration);
  return out;
}

Matrix leading_left(MatrixCRef a, Index k, Rng& rng) {
  const Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Index have = std::min(k, svd.matrixU().cols());
  Matrix out(a.rows(), k);
  out.leftCols(have) = svd.matrixU().leftCols(have);
  if (have < k) out.rightCols(k - have) = gaussian(a.rows(), k - have, rng);
  return out;
}

double cp_objective(MatrixCRef x1, MatrixCRef y, const Matrix& u, const Matrix& b,
                    const Matrix& c, const Matrix& w) {
  return squared_norm(x1 - u * khatri_rao(c, b).transpose()) + squared_norm(y - u * w.transpose());
}

CpCmtfResult run_als(const Tensor3& x, MatrixCRef y, Index k, const AlsOptions& opts) {
  if (opts.max_iters < 1) throw ParameterError("max_iters must be at least 1");
  if (!(opts.rel_tol >= 0.0)) throw ParameterError("rel_tol must be non-negative");
  const auto x1 = x.unfold1_view();
  const Matrix x2 = unfold(x, 2);
  const Matrix x3 = unfold(x, 3);
  const Index m = x.dim(1);

  Rng rng(derive_seed(opts.init_seed, kInitStream));
  CpCmtfResult r;
  if (opts.init == AlsInit::hosvd) {
    Matrix joined(m, x1.cols() + y.cols());
    joined << x1, y;
    r.U = leading_left(joined, k, rng);
    r.B = leading_left(x2, k, rng);
    r.C = leading_left(x3, k, rng);
    r.W = y.transpose() * r.U;
  } else {
    r.U = gaussian(m, k, rng);
    r.B = gaussian(x.dim(2), k, rng);
    r.C = gaussian(x.dim(3), k, rng);
    r.W = gaussian(y.cols(), k, rng);
  }

  const double floor = kExactFloor * (squared_norm(x1) + squared_norm(y));
  double previous = 0.0;
  for (int it = 1; it <= opts.max_iters; ++it) {
    const Matrix btb = r.B.transpose() * r.B;
    const Matrix ctc = r.C.transpose() * r.C;
    r.U = solve_gram(hadamard(btb, ctc) + r.W.transpose() * r.W,
                     x1 * khatri_rao(r.C, r.B) + y * r.W, "U", it);
    const Matrix utu = r.U.transpose() * r.U;
    r.B = solve_gram(hadamard(utu, ctc), x2 * khatri_rao(r.C, r.U), "B", it);
    r.C = solve_gram(hadamard(utu, r.B.transpose() * r.B), x3 * khatri_rao(r.B, r.U), "C", it);
    r.W = solve_gram(utu, y.transpose() * r.U, "W", it);

    const double f = cp_objective(x1, y, r.U, r.B, r.C, r.W);
    if (!std::isfinite(f)) throw DegenerateIterate("objective", it);
    r.objective_trace.push_back(f);
    r.iterations = it;
    if (f <= floor || (it > 1 && std::abs(previous - f) <= opts.rel_tol * previous)) {
      r.converged = true;
      break;
    }
    previous = f;
  }
  return r;
}

}  // namespace

TuckerCmtfResult cmtf_tucker(const Tensor3& x, MatrixCRef y, const SketchPlan& plan) {
  check_coupling(x, y);
  if (plan.k >= x.dim(2)) {
    throw ParameterError("rank k = " + std::to_string(plan.k) + " needs k < n2 = " +
                         std::to_string(x.dim(2)));
  }
  const auto start = Clock::now();
  CmfResult c = cmf(x.unfold1_view(), y, plan);
  TuckerCmtfResult out;
  out.X_approx = fold1(c.U * c.V.transpose(), x.dims());
  out.U = std::move(c.U);
  out.V = std::move(c.V);
  out.W = std::move(c.W);
  out.achieved_p = c.achieved_p;
  out.elapsed_core_s = c.elapsed_core_s;
  out.elapsed_total_s = seconds_since(start);
  return out;
}

CpCmtfResult cmtf_cp_als(const Tensor3& x, MatrixCRef y, Index k, const AlsOptions& opts) {
  check_coupling(x, y);
  check_cp_rank(x, y, k);
  const auto start = Clock::now();
  CpCmtfResult r = run_als(x, y, k, opts);
  r.elapsed_total_s = r.elapsed_core_s = seconds_since(start);
  return r;
}

CpCmtfResult cmtf_cp_als_randomized(const Tensor3& x, MatrixCRef y, const SketchPlan& plan,
                                    const AlsOptions& opts) {
  check_coupling(x, y);
  check_cp_rank(x, y, plan.k);
  if (plan.strategy == Strategy::none) return cmtf_cp_als(x, y, plan.k, opts);
  plan.validate();
  const auto start = Clock::now();
  const JointBasis basis = coupled_basis(x.unfold1_view(), y, plan);
  const auto core_start = Clock::now();
  const Tensor3 xp = mode_product(x, basis.Q.transpose(), 1);
  const Matrix yp = basis.Q.transpose() * y;
  CpCmtfResult r = run_als(xp, yp, plan.k, opts);
  r.U = basis.Q * r.U;
  r.achieved_p = std::max<Index>(0, basis.effective_cols - plan.k);
  r.elapsed_core_s = seconds_since(core_start);
  r.elapsed_total_s = seconds_since(start);
  return r;
}

double cmtf_objective(const Tensor3& x, MatrixCRef y, const TuckerCmtfResult& r) {
  CmfResult c;
  c.U = r.U;
  c.V = r.V;
  c.W = r.W;
  return cmf_objective(x.unfold1_view(), y, c);
}

double cmtf_objective(const Tensor3& x, MatrixCRef y, const CpCmtfResult& r) {
  check_coupling(x, y);
  if (r.U.rows() != x.dim(1) || r.B.rows() != x.dim(2) || r.C.rows() != x.dim(3) ||
      r.W.rows() != y.cols()) {
    throw ShapeError("CP factors do not conform to the coupled pair");
  }
  return cp_objective(x.unfold1_view(), y, r.U, r.B, r.C, r.W);
}

RelativeErrors cmtf_errors(const Tensor3& x, MatrixCRef y, const TuckerCmtfResult& r) {
  check_coupling(x, y);
  if (r.X_approx.dims() != x.dims() || r.U.rows() != y.rows() || r.W.rows() != y.cols()) {
    throw ShapeError("Tucker result does not conform to the coupled pair");
  }
  return {frobenius_norm(x.unfold1_view() - r.X_approx.unfold1_view()) / tensor_norm(x),
          frobenius_norm(y - r.U * r.W.transpose()) / frobenius_norm(y)};
}

RelativeErrors cmtf_errors(const Tensor3& x, MatrixCRef y, const CpCmtfResult& r) {
  check_coupling(x, y);
  if (r.U.rows() != x.dim(1) || r.B.rows() != x.dim(2) || r.C.rows() != x.dim(3) ||
      r.W.rows() != y.cols()) {
    throw ShapeError("CP factors do not conform to the coupled pair");
  }
  const Tensor3 approx = cp_reconstruct(r.U, r.B, r.C);
  return {frobenius_norm(x.unfold1_view() - approx.unfold1_view()) / tensor_norm(x),
          frobenius_norm(y - r.U * r.W.transpose()) / frobenius_norm(y)};
}

}  // namespace coupled
