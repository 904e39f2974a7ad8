#include <gtest/gtest.h>

#include <vector>

#include "cheb1/core.hpp"
#include "cheb1/random.hpp"
#include "test_support.hpp"

using namespace cheb1;
using testsupport::mk;

namespace {

std::vector<double> vec(std::initializer_list<double> xs) { return std::vector<double>(xs); }

}  // namespace

TEST(ArgmaxAbs, PicksUniquePeak) {
  EXPECT_EQ(argmax_abs(vec({3, 1})), 0u);
  EXPECT_EQ(argmax_abs(vec({1, -5, 2})), 1u);
}

TEST(ArgmaxAbs, ThrowsOnTie) {
  EXPECT_THROW(argmax_abs(vec({1, 1})), AlternanceTie);
  EXPECT_THROW(argmax_abs(vec({1, -1})), AlternanceTie);
  EXPECT_THROW(argmax_abs(vec({0, 0})), AlternanceTie);
}

TEST(PeakGap, MeasuresDominance) {
  EXPECT_DOUBLE_EQ(peak_gap(vec({3, 1})), 2.0);
  EXPECT_DOUBLE_EQ(peak_gap(vec({1, -5, 2})), 3.0);
  EXPECT_THROW(peak_gap(vec({0.5, 0.5})), AlternanceTie);
}

TEST(IsAlternanceFree, ExactComparison) {
  EXPECT_TRUE(is_alternance_free(vec({1, 0})));
  EXPECT_FALSE(is_alternance_free(vec({1, -1})));
  // Near-tie still counts as free under exact comparison.
  EXPECT_TRUE(is_alternance_free(vec({2, 1.9999999999})));
}

TEST(IsAlternanceFree, RelativeTieTolerance) {
  EXPECT_FALSE(is_alternance_free(vec({2, 2 * (1 - 1e-10)}), 1e-9));
  EXPECT_TRUE(is_alternance_free(vec({2, 2 * (1 - 1e-10)}), 1e-12));
}

TEST(AbsScan, AgreesWithTwoPassReference) {
  NormalRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t k = 2 + static_cast<std::size_t>(rng.uniform01() * 30);
    std::vector<double> a(k);
    for (double& x : a) x = rng.normal();
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; ++i)
      if (std::abs(a[i]) > std::abs(a[best])) best = i;
    double second = -1.0;
    for (std::size_t i = 0; i < k; ++i)
      if (i != best) second = std::max(second, std::abs(a[i]));
    EXPECT_EQ(argmax_abs(a), best);
    EXPECT_DOUBLE_EQ(peak_gap(a), std::abs(a[best]) - second);
  }
}

TEST(PreservesChebyshev, Examples) {
  EXPECT_TRUE(preserves_chebyshev(mk({{3, 2}, {1, 0.5}})).pc);
  EXPECT_TRUE(preserves_chebyshev(DenseMatrix::identity(2)).pc);

  auto rep = preserves_chebyshev(mk({{1, 1}, {0, 2}}));
  EXPECT_FALSE(rep.pc);
  ASSERT_EQ(rep.offending_rows.size(), 1u);
  EXPECT_EQ(rep.offending_rows[0], 0u);
  EXPECT_TRUE(rep.offending_cols.empty());
}

TEST(PreservesChebyshev, TransposeSwapsRoles) {
  NormalRng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    DenseMatrix a = random_normal_matrix(4, 7, rng);
    auto rep = preserves_chebyshev(a);
    auto rep_t = preserves_chebyshev(a.transposed());
    EXPECT_EQ(rep.pc, rep_t.pc);
    EXPECT_EQ(rep.offending_rows, rep_t.offending_cols);
    EXPECT_EQ(rep.offending_cols, rep_t.offending_rows);
  }
}

TEST(PreservesChebyshev, RandomMatricesAlwaysPass) {
  NormalRng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    EXPECT_TRUE(preserves_chebyshev(random_normal_matrix(20, 20, rng)).pc);
  }
}

TEST(Profile, Examples) {
  auto p = make_profile(mk({{3, 2}, {1, 0.5}}));
  EXPECT_EQ(p.row_argmax, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(p.col_argmax, (std::vector<std::size_t>{0, 0}));
  EXPECT_DOUBLE_EQ(p.cheb_norm, 3.0);
  EXPECT_DOUBLE_EQ(p.delta_row, 0.5);
  EXPECT_DOUBLE_EQ(p.delta_col, 1.5);

  auto id = make_profile(DenseMatrix::identity(2));
  EXPECT_EQ(id.row_argmax, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(id.col_argmax, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(id.delta_row, 1.0);
  EXPECT_DOUBLE_EQ(id.delta_col, 1.0);

  EXPECT_THROW(make_profile(mk({{1, 1}, {0, 2}})), NotPC);
}

TEST(Profile, PeakDominatesItsRow) {
  NormalRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix a = random_pc_matrix(6, 5, rng);
    auto p = make_profile(a);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (j == p.row_argmax[i]) continue;
        EXPECT_GT(std::abs(a(i, p.row_argmax[i])), std::abs(a(i, j)));
      }
    }
  }
}

TEST(DenseMatrix, ValidatesShapeAndEntries) {
  EXPECT_THROW(DenseMatrix(1, 2, {1.0, 2.0}), ShapeError);
  EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, 3.0, std::nan("")}), ValueError);
  EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST(ChebVector, Invariants) {
  EXPECT_THROW(ChebVector({1.0, 0.0}), NotChebyshev);
  EXPECT_THROW(ChebVector({1.0}), NotChebyshev);
  ChebVector v({3.0, -1.0});
  EXPECT_DOUBLE_EQ(v.amplitude(), 3.0);
  EXPECT_GE(v.amplitude(), 1.0);
  EXPECT_DOUBLE_EQ(v.inf_norm(), 3.0);
}

TEST(SignVector, MaskRoundTripAndNegation) {
  NormalRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 20);
    std::uint64_t mask =
        static_cast<std::uint64_t>(rng.uniform01() * static_cast<double>(1ull << n));
    SignVector t = SignVector::from_mask(mask, n);
    EXPECT_EQ(t.to_mask(), mask & ((1ull << n) - 1));
    EXPECT_EQ(t.negated().negated(), t);
  }
  EXPECT_EQ(SignVector::from_mask(0b01, 2).to_string(), "+-");
}
