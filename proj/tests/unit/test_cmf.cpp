#include "coupled/cmf.hpp"
#include "coupled/errors.hpp"
#include "coupled/testgen.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace {

using namespace coupled;

struct Pair {
  Matrix X;
  Matrix Y;
};

// X = U0 V0^T, Y = U0 W0^T with a shared rank-k left factor.
Pair coupled_rank_k(Index m, Index n1, Index n2, Index k, oracle::Gen& gen) {
  const Matrix u0 = oracle::random_matrix(m, k, gen);
  return {u0 * oracle::random_matrix(k, n1, gen), u0 * oracle::random_matrix(k, n2, gen)};
}

TEST(CmfBasic, RecoversExactCoupledLowRank) {
  oracle::Gen gen(1);
  const Pair p = coupled_rank_k(50, 20, 30, 4, gen);
  const RelativeErrors e = relative_errors(p.X, p.Y, cmf_basic(p.X, p.Y, 4));
  EXPECT_LE(e.x, 1e-10);
  EXPECT_LE(e.y, 1e-10);
}

TEST(CmfBasic, ObjectiveEqualsTailEnergyOfStackedPair) {
  oracle::Gen gen(2);
  const Matrix x = oracle::random_matrix(30, 12, gen);
  const Matrix y = oracle::random_matrix(30, 18, gen);
  const CmfResult r = cmf_basic(x, y, 4);
  const double oracle_tail = oracle::tail_energy(oracle::hstack(x, y), 4);
  EXPECT_LE(std::abs(cmf_objective(x, y, r) - oracle_tail), 1e-10 * oracle_tail);
  EXPECT_EQ(r.achieved_p, 0);
  EXPECT_EQ(r.U.cols(), 4);
  EXPECT_EQ(r.V.rows(), 12);
  EXPECT_EQ(r.W.rows(), 18);
}

TEST(CmfBasic, FullScaleSyntheticTwoErrorsInExpectedRange) {
  const auto p = testgen::synthetic2(1000, 15, 2.0, 50, 1);
  const RelativeErrors e = relative_errors(p.X, p.Y, cmf_basic(p.X, p.Y, 50));
  // Reference magnitudes 3.26e-3 and 3.57e-2; the instance is random, so
  // agreement is checked to within a factor of three.
  EXPECT_GT(e.x, 3.26e-3 / 3.0);
  EXPECT_LT(e.x, 3.26e-3 * 3.0);
  EXPECT_GT(e.y, 3.57e-2 / 3.0);
  EXPECT_LT(e.y, 3.57e-2 * 3.0);
}

TEST(CmfArguments, RejectsBadShapesAndRanks) {
  const Matrix x = Matrix::Identity(6, 4);
  const Matrix y = Matrix::Identity(6, 5);
  EXPECT_THROW((void)cmf_basic(x, Matrix::Identity(5, 5), 2), ShapeError);
  EXPECT_THROW((void)cmf_basic(x, y, 4), ParameterError);
  EXPECT_THROW((void)cmf_basic(x, y, 0), ParameterError);
  EXPECT_THROW((void)cmf_basic(Matrix::Identity(2, 6), Matrix::Identity(2, 6), 3), ParameterError);
  Matrix bad = x;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW((void)cmf_basic(bad, y, 2), ParameterError);
}

TEST(CmfRandomized, CapturesExactCoupledLowRank) {
  oracle::Gen gen(3);
  const Pair p = coupled_rank_k(60, 25, 35, 5, gen);
  const CmfResult r = cmf_randomized(p.X, p.Y, SketchPlan::simple(5, 17));
  const RelativeErrors e = relative_errors(p.X, p.Y, r);
  EXPECT_LE(e.x, 1e-9);
  EXPECT_LE(e.y, 1e-9);
  // Both sketches span range(U0), so the joint basis collapses to k columns.
  EXPECT_EQ(r.achieved_p, 0);
}

TEST(CmfRandomized, NeverBeatsTheDirectAlgorithm) {
  oracle::Gen gen(4);
  const Matrix x = oracle::random_matrix(40, 20, gen);
  const Matrix y = oracle::random_matrix(40, 25, gen);
  const double best = cmf_objective(x, y, cmf_basic(x, y, 6));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CmfResult r = cmf_randomized(x, y, SketchPlan::simple(6, seed));
    EXPECT_GE(cmf_objective(x, y, r), best - 1e-10);
    EXPECT_GE(r.achieved_p, 0);
    EXPECT_LE(r.achieved_p, 6);
  }
}

TEST(CmfRandomized, RejectsMismatchedStrategy) {
  const Matrix x = Matrix::Identity(6, 4);
  EXPECT_THROW((void)cmf_randomized(x, x, SketchPlan::rsi(2, 2, 1)), ParameterError);
}

TEST(CmfRsi, SingleIterationEqualsSimpleRandomized) {
  oracle::Gen gen(5);
  const Matrix x = oracle::random_matrix(40, 20, gen);
  const Matrix y = oracle::random_matrix(40, 25, gen);
  const CmfResult a = cmf_rsi(x, y, SketchPlan::rsi(6, 1, 21));
  const CmfResult b = cmf_randomized(x, y, SketchPlan::simple(6, 21));
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.V, b.V);
  EXPECT_EQ(a.W, b.W);
  EXPECT_EQ(a.achieved_p, b.achieved_p);
}

TEST(CmfRsi, MatchesBasicOnScaledSparseInstance) {
  const auto p = testgen::synthetic3(2000, 250, 50, 3);
  const double basic = relative_errors(p.X, p.Y, cmf_basic(p.X, p.Y, 30)).x;
  const double rsi = relative_errors(p.X, p.Y, cmf_rsi(p.X, p.Y, SketchPlan::rsi(30, 5, 8))).x;
  EXPECT_LE(std::abs(rsi - basic), 0.05 * basic);
}

TEST(CmfRsi, DeeperIterationNotWorseOnHalvingSpectra) {
  const auto p = testgen::synthetic5(120, 60, 50, 10, 4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CmfResult r2 = cmf_rsi(p.X, p.Y, SketchPlan::rsi(8, 2, seed));
    const CmfResult r5 = cmf_rsi(p.X, p.Y, SketchPlan::rsi(8, 5, seed));
    EXPECT_LE(relative_errors(p.X, p.Y, r5).sum(), relative_errors(p.X, p.Y, r2).sum() + 1e-12)
        << "seed " << seed;
  }
}

TEST(CmfRbki, UnitDepthFullBlockEqualsSimpleRandomized) {
  oracle::Gen gen(6);
  const Matrix x = oracle::random_matrix(40, 20, gen);
  const Matrix y = oracle::random_matrix(40, 25, gen);
  const CmfResult a = cmf_rbki(x, y, SketchPlan::rbki(6, 6, 1, 31));
  const CmfResult b = cmf_randomized(x, y, SketchPlan::simple(6, 31));
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.V, b.V);
  EXPECT_EQ(a.W, b.W);
}

TEST(CmfRbki, MatchesBasicOnScaledSyntheticTwo) {
  // ell = 2 with the smallest depth allowed by ell*q >= k.
  const auto p = testgen::synthetic2(300, 15, 2.0, 50, 5);
  const RelativeErrors basic = relative_errors(p.X, p.Y, cmf_basic(p.X, p.Y, 50));
  const RelativeErrors rbki = relative_errors(p.X, p.Y, cmf_rbki(p.X, p.Y, SketchPlan::rbki(50, 2, 25, 6)));
  EXPECT_LE(std::abs(rbki.x - basic.x), 0.01 * basic.x);
  EXPECT_LE(std::abs(rbki.y - basic.y), 0.01 * basic.y);
}

TEST(CmfRbki, ErrorNonIncreasingInDepth) {
  const auto p = testgen::synthetic2(200, 10, 2.0, 30, 7);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    double previous = std::numeric_limits<double>::infinity();
    for (int q = 10; q <= 20; ++q) {
      const CmfResult r = cmf_rbki(p.X, p.Y, SketchPlan::rbki(20, 2, q, seed));
      const double err = (p.X - r.U * r.V.transpose()).norm();
      EXPECT_LE(err, previous + 1e-12) << "seed " << seed << " q " << q;
      previous = err;
    }
  }
}

TEST(CmfRbki, RejectsTooShallowKrylovSpace) {
  oracle::Gen gen(8);
  const Matrix x = oracle::random_matrix(40, 20, gen);
  const Matrix y = oracle::random_matrix(40, 25, gen);
  EXPECT_THROW((void)cmf_rbki(x, y, SketchPlan::rbki(10, 2, 4, 1)), ParameterError);
  EXPECT_NO_THROW((void)cmf_rbki(x, y, SketchPlan::rbki(10, 2, 5, 1)));
}

TEST(CmfDispatch, RoutesOnStrategy) {
  oracle::Gen gen(9);
  const Matrix x = oracle::random_matrix(30, 12, gen);
  const Matrix y = oracle::random_matrix(30, 14, gen);
  EXPECT_EQ(cmf(x, y, SketchPlan::basic(3)).U, cmf_basic(x, y, 3).U);
  EXPECT_EQ(cmf(x, y, SketchPlan::rsi(3, 2, 4)).U, cmf_rsi(x, y, SketchPlan::rsi(3, 2, 4)).U);
}

TEST(CmfTiming, CoreTimeWithinTotalTime) {
  oracle::Gen gen(10);
  const Matrix x = oracle::random_matrix(200, 60, gen);
  const Matrix y = oracle::random_matrix(200, 80, gen);
  const CmfResult basic = cmf_basic(x, y, 10);
  EXPECT_EQ(basic.elapsed_core_s, basic.elapsed_total_s);
  const CmfResult r = cmf_rsi(x, y, SketchPlan::rsi(10, 3, 1));
  EXPECT_GE(r.elapsed_core_s, 0.0);
  EXPECT_LE(r.elapsed_core_s, r.elapsed_total_s);
}

TEST(CmfObjective, PerfectAndZeroFactors) {
  oracle::Gen gen(11);
  const Pair p = coupled_rank_k(20, 8, 9, 3, gen);
  const CmfResult exact = cmf_basic(p.X, p.Y, 3);
  EXPECT_LE(cmf_objective(p.X, p.Y, exact), 1e-20 * (p.X.squaredNorm() + p.Y.squaredNorm()));
  CmfResult zero = exact;
  zero.U.setZero();
  const RelativeErrors e = relative_errors(p.X, p.Y, zero);
  EXPECT_EQ(e.x, 1.0);
  EXPECT_EQ(e.y, 1.0);
}

TEST(CmfObjective, EqualsWeightedSquaredErrors) {
  oracle::Gen gen(12);
  const Matrix x = oracle::random_matrix(25, 10, gen);
  const Matrix y = oracle::random_matrix(25, 12, gen);
  const CmfResult r = cmf_basic(x, y, 3);
  const RelativeErrors e = relative_errors(x, y, r);
  const double identity = e.x * e.x * x.squaredNorm() + e.y * e.y * y.squaredNorm();
  EXPECT_NEAR(cmf_objective(x, y, r), identity, 1e-12 * identity);
}

TEST(CmfObjective, RejectsNonConformingFactors) {
  oracle::Gen gen(13);
  const Matrix x = oracle::random_matrix(10, 5, gen);
  CmfResult r = cmf_basic(x, x, 2);
  r.V.conservativeResize(4, 2);
  EXPECT_THROW((void)cmf_objective(x, x, r), ShapeError);
}

TEST(CmfProjected, PadsRankBeyondBasisWithZeros) {
  oracle::Gen gen(14);
  const Matrix x = oracle::random_matrix(20, 10, gen);
  const Matrix y = oracle::random_matrix(20, 12, gen);
  const Matrix q = oracle::random_orthonormal(20, 3, gen);
  const CmfResult r = cmf_projected(x, y, 5, q);
  EXPECT_EQ(r.U.cols(), 5);
  EXPECT_EQ(r.achieved_p, 0);
  EXPECT_EQ(r.U.col(4).norm(), 0.0);
}

}  // namespace
