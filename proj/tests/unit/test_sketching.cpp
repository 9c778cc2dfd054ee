#include "coupled/errors.hpp"
#include "coupled/sketching.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace coupled;

// m x n matrix with singular values 2^-i (i = 0..n-1) and random singular vectors.
Matrix halving_spectrum(Index m, Index n, oracle::Gen& gen) {
  const Matrix u = oracle::random_orthonormal(m, n, gen);
  const Matrix v = oracle::random_orthonormal(n, n, gen);
  Vector s(n);
  for (Index i = 0; i < n; ++i) s(i) = std::ldexp(1.0, -static_cast<int>(i));
  return u * s.asDiagonal() * v.transpose();
}

Matrix projector(MatrixCRef q) { return q * q.transpose(); }

TEST(ThinQr, OrthonormalInputGivesSignedIdentityR) {
  oracle::Gen gen(1);
  const Matrix a = oracle::random_orthonormal(12, 4, gen);
  const ThinQr qr = thin_qr(a);
  for (Index j = 0; j < 4; ++j) {
    EXPECT_NEAR(std::abs(qr.R(j, j)), 1.0, 1e-12);
    EXPECT_LE((qr.Q.col(j) - qr.R(j, j) * a.col(j)).norm(), 1e-12);
    for (Index i = 0; i < 4; ++i)
      if (i != j) EXPECT_NEAR(qr.R(i, j), 0.0, 1e-12);
  }
}

TEST(ThinQr, ReconstructsRandomTall) {
  oracle::Gen gen(2);
  const Matrix a = oracle::random_matrix(50, 10, gen);
  const ThinQr qr = thin_qr(a);
  EXPECT_LE((a - qr.Q * qr.R).norm() / a.norm(), 1e-12);
  EXPECT_LE(oracle::orthogonality_error(qr.Q), 1e-10);
  for (Index j = 0; j < 10; ++j)
    for (Index i = j + 1; i < 10; ++i) EXPECT_EQ(qr.R(i, j), 0.0);
}

TEST(ThinQr, HandGramSchmidt) {
  Matrix a(2, 1);
  a << 3, 4;
  EXPECT_NEAR(std::abs(thin_qr(a).R(0, 0)), 5.0, 1e-14);
}

TEST(ThinQr, RankDeficientGivesTinyDiagonalNotException) {
  Matrix a(4, 2);
  a << 1, 2, 2, 4, 3, 6, 4, 8;
  const ThinQr qr = thin_qr(a);
  EXPECT_LE(std::abs(qr.R(1, 1)), 1e-12 * std::abs(qr.R(0, 0)));
}

TEST(ThinQr, RejectsWideInput) { EXPECT_THROW((void)thin_qr(Matrix::Zero(2, 3)), ShapeError); }

TEST(JointBasis, IdenticalRangesCollapse) {
  oracle::Gen gen(3);
  const Matrix q1 = oracle::random_orthonormal(30, 6, gen);
  const JointBasis jb = joint_basis(q1, q1);
  EXPECT_EQ(jb.effective_cols, 6);
  EXPECT_EQ(jb.Q.cols(), 6);
  EXPECT_LE(oracle::relative_diff(projector(jb.Q), projector(q1)), 1e-10);
}

TEST(JointBasis, DisjointRangesKeepAllColumns) {
  oracle::Gen gen(4);
  const Matrix q1 = oracle::random_orthonormal(40, 5, gen);
  const Matrix q2 = oracle::random_orthonormal(40, 5, gen);
  ASSERT_EQ(oracle::numerical_rank(oracle::hstack(q1, q2), 1e-10), 10);
  const JointBasis jb = joint_basis(q1, q2);
  EXPECT_EQ(jb.effective_cols, 10);
  EXPECT_LE(oracle::orthogonality_error(jb.Q), 1e-10);
}

TEST(JointBasis, SharedThreeDimensionalSubspace) {
  oracle::Gen gen(5);
  const Matrix base = oracle::random_orthonormal(40, 7, gen);
  // Both share base columns 0..2; q1 adds 3..4, q2 adds 5..6, each re-mixed.
  const Matrix mix1 = oracle::random_orthonormal(5, 5, gen);
  const Matrix mix2 = oracle::random_orthonormal(5, 5, gen);
  Matrix b1(40, 5), b2(40, 5);
  b1 << base.leftCols(3), base.middleCols(3, 2);
  b2 << base.leftCols(3), base.middleCols(5, 2);
  const Matrix q1 = b1 * mix1;
  const Matrix q2 = b2 * mix2;
  ASSERT_EQ(oracle::numerical_rank(oracle::hstack(q1, q2), 1e-10), 7);
  const JointBasis jb = joint_basis(q1, q2);
  EXPECT_EQ(jb.effective_cols, 7);
  EXPECT_LE(oracle::projection_residual(jb.Q, oracle::hstack(q1, q2)), 1e-10);
}

TEST(JointBasis, RejectsEmptyAndMismatchedInputs) {
  const Matrix q = Matrix::Identity(4, 2);
  EXPECT_THROW((void)joint_basis(q, Matrix(4, 0)), ShapeError);
  EXPECT_THROW((void)joint_basis(q, Matrix::Identity(5, 2)), ShapeError);
}

TEST(SimpleBasis, IdentityFullSketchIsSquareOrthogonal) {
  Rng rng(1);
  const Matrix q = simple_basis(Matrix::Identity(8, 8), 8, rng);
  ASSERT_EQ(q.rows(), 8);
  ASSERT_EQ(q.cols(), 8);
  EXPECT_LE((q * q.transpose() - Matrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(SimpleBasis, CapturesExactLowRank) {
  oracle::Gen gen(6);
  const Matrix x = oracle::random_low_rank(60, 40, 7, gen);
  Rng rng(2);
  EXPECT_LE(oracle::projection_residual(simple_basis(x, 7, rng), x), 1e-10);
}

TEST(SimpleBasis, UnderSketchedHasPositiveResidualAboveEckartYoungBound) {
  oracle::Gen gen(7);
  const Matrix x = oracle::random_low_rank(60, 40, 10, gen);
  Rng rng(3);
  const Matrix q = simple_basis(x, 5, rng);
  const double residual = oracle::projection_residual(q, x);
  const double floor = std::sqrt(oracle::tail_energy(x, 5)) / x.norm();
  EXPECT_GT(floor, 0.0);
  EXPECT_GE(residual, floor * (1.0 - 1e-12));
}

TEST(SimpleBasis, RejectsRankOutOfRange) {
  Rng rng(4);
  EXPECT_THROW((void)simple_basis(Matrix::Identity(5, 4), 5, rng), ParameterError);
  EXPECT_THROW((void)simple_basis(Matrix::Identity(5, 4), 0, rng), ParameterError);
}

TEST(RsiBasis, SingleIterationEqualsSimpleBasis) {
  oracle::Gen gen(8);
  const Matrix x = oracle::random_matrix(40, 30, gen);
  Rng a(77), b(77);
  EXPECT_EQ(rsi_basis(x, 6, 1, a), simple_basis(x, 6, b));
}

TEST(RsiBasis, ResidualDecreasesWithIterations) {
  oracle::Gen gen(9);
  const Matrix x = halving_spectrum(80, 40, gen);
  double previous = 2.0;
  for (int q = 1; q <= 5; ++q) {
    Rng rng(123);
    const double residual = oracle::projection_residual(rsi_basis(x, 6, q, rng), x);
    EXPECT_LE(residual, previous + 1e-12) << "q = " << q;
    previous = residual;
  }
}

TEST(RsiBasis, ExactLowRankAnyDepth) {
  oracle::Gen gen(10);
  const Matrix x = oracle::random_low_rank(50, 30, 5, gen);
  for (int q = 1; q <= 4; ++q) {
    Rng rng(5);
    EXPECT_LE(oracle::projection_residual(rsi_basis(x, 5, q, rng), x), 1e-10) << "q = " << q;
  }
}

TEST(RsiBasis, RejectsBadParameters) {
  Rng rng(6);
  EXPECT_THROW((void)rsi_basis(Matrix::Identity(5, 4), 5, 1, rng), ParameterError);
  EXPECT_THROW((void)rsi_basis(Matrix::Identity(5, 4), 2, 0, rng), ParameterError);
}

TEST(RbkiBasis, DepthOneSpansSimpleBasis) {
  oracle::Gen gen(11);
  const Matrix a = oracle::random_matrix(30, 20, gen);
  Rng r1(8), r2(8);
  const Matrix q_rbki = rbki_basis(a, 4, 1, r1);
  const Matrix q_simple = simple_basis(a, 4, r2);
  EXPECT_LE((projector(q_rbki) - projector(q_simple)).norm(), 1e-10);
}

TEST(RbkiBasis, OrthonormalOnIllConditionedInput) {
  oracle::Gen gen(12);
  const Matrix a = halving_spectrum(100, 60, gen);
  Rng rng(9);
  const Matrix q = rbki_basis(a, 3, 8, rng);
  ASSERT_EQ(q.cols(), 24);
  EXPECT_LE(oracle::orthogonality_error(q), 1e-10);
}

TEST(RbkiBasis, SpansTheBlockKrylovSpace) {
  oracle::Gen gen(13);
  const Matrix a = oracle::random_matrix(20, 8, gen);
  Rng rng(10), replay(10);
  const Matrix q = rbki_basis(a, 2, 3, rng);
  const Matrix omega = gaussian(8, 2, replay);
  const Matrix aat = a * a.transpose();
  Matrix krylov(20, 6);
  krylov << a * omega, aat * a * omega, aat * aat * a * omega;
  const Index krylov_rank = oracle::numerical_rank(krylov, 1e-8);
  EXPECT_EQ(oracle::numerical_rank(oracle::hstack(q, krylov), 1e-8), krylov_rank);
  EXPECT_EQ(q.cols(), 6);
}

TEST(RbkiBasis, RejectsOversizedKrylovSpace) {
  Rng rng(11);
  EXPECT_THROW((void)rbki_basis(Matrix::Identity(10, 10), 3, 4, rng), ParameterError);
  EXPECT_THROW((void)rbki_basis(Matrix::Identity(10, 10), 0, 1, rng), ParameterError);
}

TEST(SketchPlanType, ValidatesParameters) {
  EXPECT_NO_THROW(SketchPlan::rsi(3, 2, 1).validate());
  EXPECT_THROW(SketchPlan::rsi(0, 2, 1).validate(), ParameterError);
  EXPECT_THROW(SketchPlan::rsi(3, 0, 1).validate(), ParameterError);
  EXPECT_THROW(SketchPlan::rbki(3, 0, 2, 1).validate(), ParameterError);
  SketchPlan bad_tol = SketchPlan::simple(3, 1);
  bad_tol.trunc_tol = -1.0;
  EXPECT_THROW(bad_tol.validate(), ParameterError);
}

TEST(SketchPlanType, StrategyNamesRoundTrip) {
  for (Strategy s : {Strategy::none, Strategy::simple, Strategy::rsi, Strategy::rbki}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_EQ(parse_strategy("basic"), Strategy::none);
  EXPECT_THROW((void)parse_strategy("lanczos"), ParameterError);
}

TEST(CoupledBasis, DeterministicPerSeed) {
  oracle::Gen gen(14);
  const Matrix x = oracle::random_matrix(40, 20, gen);
  const Matrix y = oracle::random_matrix(40, 25, gen);
  const SketchPlan plan = SketchPlan::rbki(5, 2, 3, 99);
  const JointBasis a = coupled_basis(x, y, plan);
  const JointBasis b = coupled_basis(x, y, plan);
  EXPECT_EQ(a.Q, b.Q);
  EXPECT_EQ(a.effective_cols, b.effective_cols);
}

}  // namespace
