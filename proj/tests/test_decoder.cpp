#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"

using namespace eqmat;
using oracle::narrow;

namespace {

ConstructionTrace trace_for(std::int64_t k) { return ConstructionTrace{1, 1, k, 2}; }

}  // namespace

TEST(Decode, WorkedExample) {
  IntVector z{4, -2, -1, 0};
  EXPECT_EQ(narrow(decode(trace_for(2), z)), (std::vector<long long>{0, 1, 0, 0, 1, 1, 1, 0}));
}

TEST(Decode, ZeroDecodesToZero) {
  for (int k = 0; k <= 6; ++k) {
    auto t = trace_for(k);
    auto x = decode(t, IntVector(static_cast<std::size_t>(t.rows()), 0));
    EXPECT_EQ(x, IntVector(static_cast<std::size_t>(t.cols()), 0));
  }
}

TEST(Decode, RoundTripOnRandomVectors) {
  std::mt19937_64 rng(42);
  for (int k : {1, 2, 3, 4}) {
    auto a = construct_eq(k).matrix;
    for (int trial = 0; trial < 1000; ++trial) {
      auto x = oracle::random_bits(rng, a.cols());
      ASSERT_EQ(decode(trace_for(k), encode(a, x)), x) << "k=" << k;
    }
  }
}

TEST(Decode, RoundTripOverTheWholeCubeAtK2) {
  auto a = construct_eq(2).matrix;
  for (unsigned mask = 0; mask < 256; ++mask) {
    IntVector x(8);
    for (unsigned j = 0; j < 8; ++j) x[j] = (mask >> j) & 1u;
    ASSERT_EQ(decode(trace_for(2), encode(a, x)), x);
  }
}

TEST(Decode, RejectsBadInput) {
  EXPECT_THROW((void)decode(trace_for(2), IntVector{1, 2, 3}), DimensionError);
  EXPECT_THROW((void)decode(ConstructionTrace{1, 1, 1, 3}, IntVector{0, 0, 0}), PreconditionError);
  EXPECT_THROW((void)decode(ConstructionTrace{2, 3, 1, 2}, IntVector{0, 0, 0, 0}), PreconditionError);
  EXPECT_THROW((void)decode(trace_for(0), IntVector{2}), NotInImage);
  EXPECT_THROW((void)decode(trace_for(0), IntVector{-1}), NotInImage);
}

TEST(Decode, OutOfImageMatchesBruteForcePreimage) {
  std::mt19937_64 rng(77);
  for (int k : {1, 2}) {
    auto a = construct_eq(k).matrix;
    const std::size_t n = a.cols();
    std::map<std::vector<long long>, IntVector> preimage;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      IntVector x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1u;
      preimage[narrow(matvec(a, x))] = x;
    }
    std::uniform_int_distribution<int> d(-static_cast<int>(n), static_cast<int>(n));
    int rejected = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      IntVector z(a.rows());
      for (auto& v : z) v = d(rng);
      auto it = preimage.find(narrow(z));
      if (it == preimage.end()) {
        EXPECT_THROW((void)decode(trace_for(k), z), NotInImage);
        ++rejected;
      } else {
        EXPECT_EQ(decode(trace_for(k), z), it->second);
      }
    }
    EXPECT_GT(rejected, 500);
  }
}

TEST(Decode, OperationCountIsLinear) {
  std::mt19937_64 rng(3);
  for (int k = 1; k <= 6; ++k) {
    auto a = construct_eq(k).matrix;
    for (int trial = 0; trial < 20; ++trial) {
      DecodeStats stats;
      (void)decode(trace_for(k), encode(a, oracle::random_bits(rng, a.cols())), &stats);
      EXPECT_GT(stats.arithmetic_ops, 0u);
      EXPECT_LE(stats.arithmetic_ops, kDecodeOpsPerColumn * a.cols()) << "k=" << k;
    }
  }
}

TEST(Encode, Examples) {
  auto a = construct_eq(2).matrix;
  // row sums of the 4x8 fixture
  EXPECT_EQ(narrow(encode(a, IntVector(8, 1))), (std::vector<long long>{7, 1, 0, 0}));
  EXPECT_EQ(narrow(encode(a, IntVector(8, 0))), (std::vector<long long>{0, 0, 0, 0}));
  IntVector e8(8, 0);
  e8[7] = 1;
  EXPECT_EQ(narrow(encode(a, e8)), (std::vector<long long>{0, 1, 0, 0}));
  EXPECT_THROW((void)encode(a, IntVector{0, 0, 0, 0, 0, 0, 0, 2}), PreconditionError);
  EXPECT_THROW((void)encode(a, IntVector{0, -1, 0, 0, 0, 0, 0, 0}), PreconditionError);
  EXPECT_THROW((void)encode(a, IntVector(7, 0)), DimensionError);
}
