#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"

using namespace eqmat;

TEST(SampleMatrix, Deterministic) {
  auto a = sample_matrix(2, 4, 1, 7, 0);
  auto b = sample_matrix(2, 4, 1, 7, 0);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == sample_matrix(2, 4, 1, 7, 1));
  EXPECT_FALSE(a == sample_matrix(2, 4, 1, 8, 0));
  for (auto v : a.entries()) {
    EXPECT_GE(static_cast<long long>(v), -1);
    EXPECT_LE(static_cast<long long>(v), 1);
  }
}

TEST(SampleMatrix, ZeroWeightGivesZeros) {
  auto a = sample_matrix(3, 5, 0, 1, 0);
  EXPECT_TRUE(a == IntMatrix(3, 5, std::vector<i128>(15, 0)));
  EXPECT_THROW((void)sample_matrix(1, 1, -1, 0, 0), PreconditionError);
}

TEST(SampleMatrix, UniformWithinThreeSigma) {
  // 10^5 draws over 5 values: mean 20000, sigma = sqrt(10^5 * 0.2 * 0.8) ~ 126.5
  auto a = sample_matrix(1000, 100, 2, 123, 0);
  std::array<int, 5> counts{};
  for (auto v : a.entries()) ++counts[static_cast<std::size_t>(v + 2)];
  const double sigma = std::sqrt(1e5 * 0.2 * 0.8);
  double chi2 = 0;
  for (int c : counts) {
    EXPECT_LE(std::abs(c - 20000.0), 3 * sigma) << c;
    chi2 += (c - 20000.0) * (c - 20000.0) / 20000.0;
  }
  EXPECT_LT(chi2, 18.47);  // 99.9% quantile, 4 degrees of freedom
}

TEST(UniformEntry, CoversTheRange) {
  for (std::int64_t w : {1, 3, 8}) {
    std::vector<int> seen(2 * w + 1, 0);
    for (std::uint64_t i = 0; i < 2000; ++i) {
      auto v = uniform_entry(5, i, 0, 0, w);
      ASSERT_GE(v, -w);
      ASSERT_LE(v, w);
      ++seen[static_cast<std::size_t>(v + w)];
    }
    for (int s : seen) EXPECT_GT(s, 0);
  }
}

TEST(SearchRmds, ReturnsAnIndependentlyVerifiedMatrix) {
  SearchParams p;
  p.n = 3;
  p.m = 2;
  p.r = 3;
  p.q = 3;
  p.w = 8;
  p.seed = 1;
  auto out = search_rmds(p);
  ASSERT_FALSE(out.exhausted());
  EXPECT_EQ(out.matrix->rows(), 6u);
  EXPECT_EQ(out.matrix->cols(), 3u);
  EXPECT_TRUE(oracle::rmds_naive(*out.matrix, 2, 3));
  EXPECT_LE(static_cast<long long>(out.matrix->weight_bound()), 8);
  // the returned matrix is the sample for the last attempt
  EXPECT_TRUE(*out.matrix == sample_matrix(6, 3, 8, 1, out.attempts - 1));
}

TEST(SearchRmds, DeterministicAcrossThreadCounts) {
  SearchParams p;
  p.n = 4;
  p.m = 2;
  p.r = 2;
  p.q = 2;
  p.w = 3;
  p.seed = 5;
  auto a = search_rmds(p, Limits{100'000'000, 1});
  auto b = search_rmds(p, Limits{100'000'000, 4});
  ASSERT_FALSE(a.exhausted());
  EXPECT_EQ(a.attempts, b.attempts);
  EXPECT_TRUE(a.matrix == b.matrix);
  EXPECT_TRUE(oracle::rmds_naive(*a.matrix, 2, 2));
}

TEST(SearchRmds, SingleBlockIsAnEqSearch) {
  SearchParams p;
  p.n = 5;
  p.m = 2;
  p.r = 1;
  p.w = 4;
  p.seed = 9;
  auto out = search_rmds(p);
  ASSERT_FALSE(out.exhausted());
  EXPECT_TRUE(is_eq_q(*out.matrix, 2).passed());
  EXPECT_FALSE(oracle::has_kernel_vector(*out.matrix, 2));
}

TEST(SearchRmds, ZeroWeightExhausts) {
  SearchParams p;
  p.n = 4;
  p.m = 2;
  p.r = 1;
  p.q = 3;
  p.w = 0;
  p.max_attempts = 25;
  auto out = search_rmds(p);
  EXPECT_TRUE(out.exhausted());
  EXPECT_EQ(out.attempts, 25u);
}

TEST(SearchRmds, RefusesRatesAboveTheMdsBound) {
  SearchParams p;
  p.n = 4;
  p.m = 1;
  p.w = 0;  // alphabet size 1, bound 1
  p.r = 2;
  EXPECT_THROW((void)search_rmds(p), PreconditionError);
  p.w = 1;  // alphabet size 3, bound 81
  p.r = 82;
  EXPECT_THROW((void)search_rmds(p), PreconditionError);
  p.r = 81;
  p.max_attempts = 0;
  EXPECT_TRUE(search_rmds(p).exhausted());
}

TEST(SuggestParams, Examples) {
  auto a = suggest_params(8, 8, 2);
  EXPECT_EQ(a.m, 3u);
  EXPECT_EQ(a.w, 32);
  EXPECT_EQ(suggest_params(2, 1, 2).m, 2u);
  EXPECT_EQ(suggest_params(2, 1, 2).w, 4);
  auto b = suggest_params(16, 1, 2);
  EXPECT_EQ(b.m, 4u);
  EXPECT_EQ(b.w, 4);
  EXPECT_EQ(suggest_params(16, 0, 2).w, 2);
  EXPECT_EQ(suggest_params(8, 3, 2, 1).w, 3);
  EXPECT_THROW((void)suggest_params(1, 1, 2), PreconditionError);
}

TEST(SuggestParams, MatchesTheFormula) {
  for (std::size_t n = 2; n <= 200; ++n) {
    const double m = static_cast<double>(suggest_params(n, 1, 2).m);
    const double exact = static_cast<double>(n) / std::log2(static_cast<double>(n));
    EXPECT_GE(m, exact - 1e-9);
    EXPECT_LT(m - 1, exact);
  }
}
