#include "coupled/sketching.hpp"

#include "coupled/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coupled {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::none: return "basic";
    case Strategy::simple: return "simple";
    case Strategy::rsi: return "rsi";
    case Strategy::rbki: return "rbki";
  }
  return "basic";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "none" || name == "basic") return Strategy::none;
  if (name == "simple" || name == "randomized") return Strategy::simple;
  if (name == "rsi") return Strategy::rsi;
  if (name == "rbki") return Strategy::rbki;
  throw ParameterError("unknown sketching strategy '" + std::string(name) + "'");
}

void SketchPlan::validate() const {
  if (k < 1) throw ParameterError("rank k must be at least 1, got " + std::to_string(k));
  if ((strategy == Strategy::rsi || strategy == Strategy::rbki) && q < 1) {
    throw ParameterError("depth q must be at least 1, got " + std::to_string(q));
  }
  if (strategy == Strategy::rbki && ell < 1) {
    throw ParameterError("block size ell must be at least 1, got " + std::to_string(ell));
  }
  if (!(trunc_tol > 0.0 && trunc_tol < 1.0)) {
    throw ParameterError("trunc_tol must lie in (0, 1)");
  }
}

ThinQr thin_qr(MatrixCRef a) {
  if (a.cols() == 0 || a.rows() < a.cols()) {
    throw ShapeError("thin_qr needs rows >= cols >= 1, got " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()));
  }
  const Eigen::HouseholderQR<Matrix> qr(a);
  ThinQr out;
  out.Q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  out.R = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  return out;
}

JointBasis joint_basis(MatrixCRef q1, MatrixCRef q2, double trunc_tol) {
  if (q1.cols() == 0 || q2.cols() == 0) throw ShapeError("joint_basis inputs need columns");
  if (q1.rows() != q2.rows()) {
    throw ShapeError("joint_basis inputs have " + std::to_string(q1.rows()) + " and " +
                     std::to_string(q2.rows()) + " rows");
  }
  Matrix stacked(q1.rows(), q1.cols() + q2.cols());
  stacked << q1, q2;
  const Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  const auto& r = qr.matrixR();
  const Index diag = std::min(stacked.rows(), stacked.cols());
  const double lead = diag > 0 ? std::abs(r(0, 0)) : 0.0;
  Index keep = 0;
  while (keep < diag && lead > 0.0 && std::abs(r(keep, keep)) >= trunc_tol * lead) ++keep;
  JointBasis out;
  out.Q = qr.householderQ() * Matrix::Identity(stacked.rows(), keep);
  out.effective_cols = keep;
  return out;
}

namespace {

void check_rank(MatrixCRef x, Index k) {
  if (k < 1 || k > std::min(x.rows(), x.cols())) {
    throw ParameterError("sketch rank " + std::to_string(k) + " outside [1, " +
                         std::to_string(std::min(x.rows(), x.cols())) + "]");
  }
}

}  // namespace

Matrix simple_basis(MatrixCRef x, Index k, Rng& rng) {
  check_rank(x, k);
  const Matrix omega = gaussian(x.cols(), k, rng);
  return thin_qr(x * omega).Q;
}

Matrix rsi_basis(MatrixCRef x, Index k, int q, Rng& rng) {
  check_rank(x, k);
  if (q < 1) throw ParameterError("RSI needs q >= 1");
  Matrix omega = gaussian(x.cols(), k, rng);
  Matrix basis;
  for (int i = 0; i < q; ++i) {
    basis = thin_qr(x * omega).Q;
    if (i + 1 < q) omega = x.transpose() * basis;
  }
  return basis;
}

Matrix rbki_basis(MatrixCRef a, Index ell, int q, Rng& rng) {
  if (ell < 1 || q < 1) throw ParameterError("RBKI needs ell >= 1 and q >= 1");
  const Index width = ell * q;
  if (width > a.rows()) {
    throw ParameterError("RBKI basis width ell*q = " + std::to_string(width) +
                         " exceeds the row count " + std::to_string(a.rows()));
  }
  Matrix basis(a.rows(), width);
  Matrix omega = gaussian(a.cols(), ell, rng);
  for (int i = 0; i < q; ++i) {
    Matrix block = a * omega;
    const Index done = ell * i;
    if (done > 0) {
      const auto prev = basis.leftCols(done);
      for (int pass = 0; pass < 2; ++pass) block -= prev * (prev.transpose() * block);
      // Once the Krylov space is exhausted the residual block is rounding
      // noise whose normalized columns lean on prev; orthogonalize the
      // normalized block again so the basis stays orthonormal.
      block = thin_qr(block).Q;
      for (int pass = 0; pass < 2; ++pass) block -= prev * (prev.transpose() * block);
    }
    basis.middleCols(done, ell) = thin_qr(block).Q;
    if (i + 1 < q) omega = a.transpose() * basis.middleCols(done, ell);
  }
  return basis;
}

Matrix sketch_basis(MatrixCRef a, const SketchPlan& plan, Rng& rng) {
  switch (plan.strategy) {
    case Strategy::simple: return simple_basis(a, plan.k, rng);
    case Strategy::rsi: return rsi_basis(a, plan.k, plan.q, rng);
    case Strategy::rbki: return rbki_basis(a, plan.ell, plan.q, rng);
    case Strategy::none: break;
  }
  throw ParameterError("sketch_basis needs a randomized strategy");
}

JointBasis coupled_basis(MatrixCRef x, MatrixCRef y, const SketchPlan& plan) {
  plan.validate();
  Rng rng(plan.seed);
  const Matrix q1 = sketch_basis(x, plan, rng);
  const Matrix q2 = sketch_basis(y, plan, rng);
  return joint_basis(q1, q2, plan.trunc_tol);
}

}  // namespace coupled
