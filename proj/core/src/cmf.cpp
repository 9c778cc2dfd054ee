#include "coupled/cmf.hpp"

#include "coupled/errors.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace coupled {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Leading k singular triplets of [X Y]; k may not exceed min(rows, n1 + n2).
CmfResult svd_factors(MatrixCRef x, MatrixCRef y, Index k) {
  Matrix joined(x.rows(), x.cols() + y.cols());
  joined << x, y;
  const Eigen::BDCSVD<Matrix> svd(joined, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix z = svd.matrixV().leftCols(k) * svd.singularValues().head(k).asDiagonal();
  CmfResult out;
  out.U = svd.matrixU().leftCols(k);
  out.V = z.topRows(x.cols());
  out.W = z.bottomRows(y.cols());
  return out;
}

void check_factor_shapes(MatrixCRef x, MatrixCRef y, const CmfResult& r) {
  const Index k = r.U.cols();
  if (r.U.rows() != x.rows() || r.V.rows() != x.cols() || r.W.rows() != y.cols() ||
      r.V.cols() != k || r.W.cols() != k || x.rows() != y.rows()) {
    throw ShapeError("factors do not conform to the coupled pair");
  }
}

void require_strategy(const SketchPlan& plan, Strategy s) {
  if (plan.strategy != s) {
    throw ParameterError("plan strategy '" + std::string(to_string(plan.strategy)) +
                         "' where '" + std::string(to_string(s)) + "' was expected");
  }
}

CmfResult run_sketched(MatrixCRef x, MatrixCRef y, const SketchPlan& plan) {
  check_cmf_arguments(x, y, plan.k);
  plan.validate();
  const auto start = Clock::now();
  const JointBasis basis = coupled_basis(x, y, plan);
  const auto core_start = Clock::now();
  CmfResult out = cmf_projected(x, y, plan.k, basis.Q);
  out.elapsed_core_s = seconds_since(core_start);
  out.elapsed_total_s = seconds_since(start);
  return out;
}

}  // namespace

void check_cmf_arguments(MatrixCRef x, MatrixCRef y, Index k) {
  if (x.rows() != y.rows()) {
    throw ShapeError("X has " + std::to_string(x.rows()) + " rows but Y has " +
                     std::to_string(y.rows()));
  }
  if (x.size() == 0 || y.size() == 0) throw ShapeError("X and Y must be non-empty");
  require_finite(x, "X");
  require_finite(y, "Y");
  if (k < 1 || k >= std::min(x.cols(), y.cols()) || k > x.rows()) {
    throw ParameterError("rank k = " + std::to_string(k) + " needs 1 <= k < min(n1, n2) = " +
                         std::to_string(std::min(x.cols(), y.cols())) + " and k <= m = " +
                         std::to_string(x.rows()));
  }
}

CmfResult cmf_basic(MatrixCRef x, MatrixCRef y, Index k) {
  check_cmf_arguments(x, y, k);
  const auto start = Clock::now();
  CmfResult out = svd_factors(x, y, k);
  out.elapsed_total_s = out.elapsed_core_s = seconds_since(start);
  return out;
}

CmfResult cmf_projected(MatrixCRef x, MatrixCRef y, Index k, MatrixCRef q) {
  check_cmf_arguments(x, y, k);
  if (q.rows() != x.rows()) throw ShapeError("basis rows differ from the row count of X");
  const auto start = Clock::now();
  CmfResult out;
  out.U = Matrix::Zero(x.rows(), k);
  out.V = Matrix::Zero(x.cols(), k);
  out.W = Matrix::Zero(y.cols(), k);
  const Index solved = std::min(k, q.cols());
  if (solved > 0) {
    const Matrix qx = q.transpose() * x;
    const Matrix qy = q.transpose() * y;
    const CmfResult small = svd_factors(qx, qy, solved);
    out.U.leftCols(solved) = q * small.U;
    out.V.leftCols(solved) = small.V;
    out.W.leftCols(solved) = small.W;
  }
  out.achieved_p = std::max<Index>(0, q.cols() - k);
  out.elapsed_total_s = out.elapsed_core_s = seconds_since(start);
  return out;
}

CmfResult cmf_randomized(MatrixCRef x, MatrixCRef y, const SketchPlan& plan) {
  require_strategy(plan, Strategy::simple);
  return run_sketched(x, y, plan);
}

CmfResult cmf_rsi(MatrixCRef x, MatrixCRef y, const SketchPlan& plan) {
  require_strategy(plan, Strategy::rsi);
  return run_sketched(x, y, plan);
}

CmfResult cmf_rbki(MatrixCRef x, MatrixCRef y, const SketchPlan& plan) {
  require_strategy(plan, Strategy::rbki);
  if (plan.ell * plan.q < plan.k) {
    throw ParameterError("RBKI needs ell*q >= k, got " + std::to_string(plan.ell * plan.q) +
                         " < " + std::to_string(plan.k));
  }
  return run_sketched(x, y, plan);
}

CmfResult cmf(MatrixCRef x, MatrixCRef y, const SketchPlan& plan) {
  switch (plan.strategy) {
    case Strategy::none: plan.validate(); return cmf_basic(x, y, plan.k);
    case Strategy::simple: return cmf_randomized(x, y, plan);
    case Strategy::rsi: return cmf_rsi(x, y, plan);
    case Strategy::rbki: return cmf_rbki(x, y, plan);
  }
  throw ParameterError("unknown strategy");
}

double cmf_objective(MatrixCRef x, MatrixCRef y, const CmfResult& r) {
  check_factor_shapes(x, y, r);
  return squared_norm(x - r.U * r.V.transpose()) + squared_norm(y - r.U * r.W.transpose());
}

RelativeErrors relative_errors(MatrixCRef x, MatrixCRef y, const CmfResult& r) {
  check_factor_shapes(x, y, r);
  return {frobenius_norm(x - r.U * r.V.transpose()) / frobenius_norm(x),
          frobenius_norm(y - r.U * r.W.transpose()) / frobenius_norm(y)};
}

}  // namespace coupled
