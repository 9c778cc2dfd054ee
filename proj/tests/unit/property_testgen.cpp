#include "coupled/testgen.hpp"
#include "property.hpp"

#include <cmath>

namespace {

using namespace coupled;
using namespace coupled::testgen;

InstanceSpec random_spec(oracle::Gen& gen, int c) {
  InstanceSpec s;
  s.seed = static_cast<std::uint64_t>(gen());
  s.family = static_cast<Family>(c % 7);
  s.m = oracle::random_index(8, 30, gen);
  s.n = oracle::random_index(6, 24, gen);
  s.n1 = oracle::random_index(3, s.m, gen);
  s.n2 = oracle::random_index(3, s.m, gen);
  s.n3 = oracle::random_index(2, 6, gen);
  s.r = oracle::random_index(1, 3, gen);
  s.r1 = oracle::random_index(1, std::min(s.m, s.n1), gen);
  s.r2 = oracle::random_index(1, std::min(s.m, s.n2), gen);
  s.r3 = oracle::random_index(0, s.n, gen);
  s.c = oracle::random_index(0, std::min(s.n1, s.n2), gen);
  s.d = 1.0 + static_cast<double>(oracle::random_index(0, 2, gen));
  if (s.family == Family::synthetic2) s.c = oracle::random_index(0, s.n, gen);
  if (s.family == Family::synthetic3) s.r = oracle::random_index(1, std::min(s.m, s.n), gen);
  if (s.family == Family::tensor_test) {
    s.r1 = oracle::random_index(0, s.n, gen);
    s.r2 = oracle::random_index(0, s.n, gen);
  }
  if (s.family == Family::planted_cp) {
    s.n2 = oracle::random_index(3, 8, gen);
    s.r = oracle::random_index(1, std::min({s.n2, s.n3, s.n}), gen);
  }
  return s;
}

bool same(const Instance& a, const Instance& b) {
  if (a.index() != b.index()) return false;
  if (const auto* pa = std::get_if<MatrixPair>(&a)) {
    const auto& pb = std::get<MatrixPair>(b);
    return pa->X == pb.X && pa->Y == pb.Y;
  }
  const auto& ta = std::get<TensorMatrixPair>(a);
  const auto& tb = std::get<TensorMatrixPair>(b);
  return ta.T == tb.T && ta.Y == tb.Y;
}

Matrix slice(const Tensor3& t, Index l) {
  Matrix out(t.dim(1), t.dim(2));
  for (Index j = 0; j < t.dim(2); ++j)
    for (Index i = 0; i < t.dim(1); ++i) out(i, j) = t(i, j, l);
  return out;
}

void expect_halving(MatrixCRef a, int first_exponent) {
  const Vector s = oracle::singular_values(a);
  for (Index i = 0; i < a.cols(); ++i) {
    ASSERT_NEAR(s(i), std::ldexp(1.0, -(first_exponent + static_cast<int>(i))), 1e-12) << "index " << i;
  }
}

TEST(TestgenLaws, GeneratorsArePureFunctionsOfParametersAndSeed) {
  prop::for_all(501, [](oracle::Gen& gen, int c) {
    const InstanceSpec spec = random_spec(gen, c);
    ASSERT_NO_THROW(spec.validate()) << to_string(spec.family);
    ASSERT_TRUE(same(generate(spec), generate(spec))) << to_string(spec.family);
    InstanceSpec other = spec;
    other.seed = spec.seed + 1;
    ASSERT_FALSE(same(generate(spec), generate(other))) << to_string(spec.family);
  });
}

TEST(TestgenLaws, StatedSpectraAndSharedCountsReadBack) {
  prop::for_all(502, [](oracle::Gen& gen, int c) {
    const InstanceSpec spec = random_spec(gen, c);
    const Instance inst = generate(spec);
    switch (spec.family) {
      case Family::synthetic1: {
        const auto& p = std::get<MatrixPair>(inst);
        ASSERT_EQ(oracle::numerical_rank(p.X, 1e-10), spec.r1);
        ASSERT_EQ(oracle::numerical_rank(p.Y, 1e-10), spec.r2);
        break;
      }
      case Family::synthetic2: {
        const auto& p = std::get<MatrixPair>(inst);
        const Vector sx = oracle::singular_values(p.X);
        for (Index i = 0; i < spec.n; ++i) {
          const double expected = i < spec.r ? 1.0 : std::pow(static_cast<double>(i - spec.r + 2), -spec.d);
          ASSERT_NEAR(sx(i), expected, 1e-12);
        }
        // The first c directions coincide only where both spectra separate
        // them from the rest; compare the leading r-cluster when c >= r.
        if (spec.c >= spec.r) {
          const Vector angles = oracle::principal_angles(oracle::leading_left(p.X, spec.r),
                                                         oracle::leading_left(p.Y, spec.r));
          ASSERT_LE(angles.maxCoeff(), 1e-10);
        }
        break;
      }
      case Family::synthetic3: {
        const auto& p = std::get<MatrixPair>(inst);
        ASSERT_LE(oracle::numerical_rank(p.X - p.Y, 1e-10), 2 * (std::min(spec.m, spec.n) - spec.r));
        break;
      }
      case Family::synthetic4: {
        const auto& p = std::get<MatrixPair>(inst);
        const Index keep = std::min<Index>(spec.n1, 30);
        expect_halving(p.X.leftCols(keep), 1);
        ASSERT_EQ(oracle::numerical_rank(p.Y, 1e-10), spec.r2);
        break;
      }
      case Family::synthetic5: {
        const auto& p = std::get<MatrixPair>(inst);
        expect_halving(p.X.leftCols(std::min<Index>(spec.n1, 30)), 0);
        expect_halving(p.Y.leftCols(std::min<Index>(spec.n2, 30)), 0);
        if (spec.c > 0 && spec.c <= 20) {
          const Vector angles =
              oracle::principal_angles(oracle::leading_left(p.X, spec.c), oracle::leading_left(p.Y, spec.c));
          ASSERT_LE(angles.maxCoeff(), 1e-8);
        }
        break;
      }
      case Family::tensor_test: {
        const auto& t = std::get<TensorMatrixPair>(inst);
        const Vector sy = oracle::singular_values(t.Y);
        for (Index l = 0; l < 3; ++l) {
          ASSERT_LE((oracle::singular_values(slice(t.T, l)) - sy).cwiseAbs().maxCoeff(), 1e-12);
        }
        // With d = 1 the whole spectrum is flat and no leading subspace is singled out.
        if (spec.d > 1.0 && spec.r1 >= spec.r) {
          const Vector angles = oracle::principal_angles(oracle::leading_left(slice(t.T, 0), spec.r),
                                                         oracle::leading_left(t.Y, spec.r));
          ASSERT_LE(angles.maxCoeff(), 1e-10);
        }
        break;
      }
      case Family::planted_cp: {
        const auto& t = std::get<TensorMatrixPair>(inst);
        for (int mode = 1; mode <= 3; ++mode) ASSERT_LE(oracle::numerical_rank(unfold(t.T, mode), 1e-10), spec.r);
        ASSERT_LE(oracle::numerical_rank(t.Y, 1e-10), spec.r);
        break;
      }
    }
  });
}

}  // namespace
