#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cheb1/globalopt.hpp"
#include "cheb1/oracle.hpp"
#include "cheb1/random.hpp"
#include "test_support.hpp"

using namespace cheb1;
using testsupport::mk;

TEST(Exhaustive, IdentityTwoByTwo) {
  auto r = exhaustive_optimize(DenseMatrix::identity(2));
  EXPECT_DOUBLE_EQ(r.error, 0.5);
  EXPECT_EQ(r.per_class_errors.size(), 2u);
  for (const auto& [pattern, e] : r.per_class_errors) {
    EXPECT_EQ(pattern[0], 1);
    EXPECT_DOUBLE_EQ(e, 0.5);
  }
}

TEST(Exhaustive, AgreesWithOptimize) {
  auto r = exhaustive_optimize(mk({{3, 2}, {1, 0.5}}));
  EXPECT_EQ(r.per_class_errors.size(), 2u);
  auto opt = optimize(mk({{3, 2}, {1, 0.5}}));
  EXPECT_NEAR(r.error, opt.error, 1e-10);
}

TEST(Exhaustive, ClassCount) {
  NormalRng rng(157);
  auto r = exhaustive_optimize(random_pc_matrix(5, 5, rng));
  EXPECT_EQ(r.per_class_errors.size(), 16u);
  double min_e = r.per_class_errors[0].second;
  for (const auto& [pattern, e] : r.per_class_errors) min_e = std::min(min_e, e);
  EXPECT_DOUBLE_EQ(r.error, min_e);
}

TEST(Exhaustive, RefusesWideMatrices) {
  NormalRng rng(163);
  DenseMatrix a = random_pc_matrix(2, 17, rng);
  EXPECT_THROW(exhaustive_optimize(a), TooLarge);
}

TEST(Exhaustive, InvariantUnderPermutations) {
  NormalRng rng(167);
  for (int trial = 0; trial < 5; ++trial) {
    DenseMatrix a = random_pc_matrix(5, 5, rng);
    std::vector<std::size_t> rp{4, 2, 0, 1, 3}, cp{1, 3, 4, 0, 2};
    std::vector<double> data(25);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) data[i * 5 + j] = a(rp[i], cp[j]);
    DenseMatrix b(5, 5, std::move(data));
    EXPECT_NEAR(exhaustive_optimize(a).error, exhaustive_optimize(b).error, 1e-12);
  }
}

TEST(Exhaustive, BeatsFrobeniusRank1InMaxNorm) {
  NormalRng rng(173);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix a = random_pc_matrix(6, 6, rng);
    auto [u, v, sigma] = testsupport::top_singular_pair(a);
    for (double& x : u) x *= sigma;
    double svd_err = testsupport::residual_norm(a, u, v);
    EXPECT_LE(exhaustive_optimize(a).error, svd_err + 1e-12);
  }
}

TEST(GridOracle, KnownValues) {
  EXPECT_NEAR(minimax_coeff_grid(std::vector<double>{3, 1}, ChebVector({1, 1}), -10, 10, 0.01),
              2.0, 1e-10);
  EXPECT_NEAR(minimax_coeff_grid(std::vector<double>{1, -1}, ChebVector({1, 1}), -10, 10, 0.01),
              0.0, 1e-10);
}
