#include <gtest/gtest.h>

#include "pants/oracle.hpp"
#include "pants/random.hpp"
#include "test_support.hpp"

namespace pants {
namespace {

std::uint64_t catalan(std::uint64_t m) {
  std::uint64_t c = 1;
  for (std::uint64_t k = 0; k < m; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::uint64_t double_factorial_odd(std::uint64_t m) {  // m!! for odd m
  std::uint64_t r = 1;
  for (std::uint64_t k = m; k > 1; k -= 2) r *= k;
  return r;
}

TEST(BruteInterval, Examples) {
  auto three = brute_interval(std::vector<double>{0, 1, 3});
  EXPECT_EQ(three.cost, 8.0);
  EXPECT_EQ(three.tree_count, 2u);
  auto four = brute_interval(std::vector<double>{0, 1, 2, 3});
  EXPECT_EQ(four.cost, 10.0);
  EXPECT_EQ(four.tree_count, 5u);
  EXPECT_EQ(brute_interval(std::vector<double>{4}).cost, 0.0);
}

TEST(BruteInterval, EnumeratesCatalanManyTrees) {
  for (std::size_t n = 1; n <= 10; ++n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i * i);
    EXPECT_EQ(brute_interval(xs).tree_count, catalan(n - 1)) << "n=" << n;
  }
}

TEST(BruteInterval, Limits) {
  try {
    brute_interval(std::vector<double>(kIntervalOracleLimit + 1, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OracleLimitExceeded);
  }
  EXPECT_THROW(brute_interval(std::vector<double>{}), Error);
  EXPECT_THROW(brute_interval(std::vector<double>{2, 1}), Error);
}

TEST(BruteBox, Examples) {
  auto square = brute_box(PointSet(testing::unit_square()));
  EXPECT_EQ(square.cost, 8.0);
  EXPECT_EQ(square.tree_count, 15u);
  auto tri = brute_box(PointSet({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(tri.cost, 6.0);
  EXPECT_EQ(tri.tree_count, 3u);
}

TEST(BruteBox, EnumeratesAllLeafLabelledTrees) {
  for (std::size_t n = 2; n <= 7; ++n) {
    auto r = brute_box(PointSet(testing::random_points(n, 30, n)));
    EXPECT_EQ(r.tree_count, double_factorial_odd(2 * n - 3)) << "n=" << n;
    EXPECT_GE(r.valid_count, 1u);
    EXPECT_LE(r.valid_count, r.tree_count);
  }
}

TEST(BruteBox, SquareRejectsDiagonalPairings) {
  // Pairing opposite corners makes the two inner rectangles cross.
  auto square = brute_box(PointSet(testing::unit_square()));
  EXPECT_LT(square.valid_count, square.tree_count);
}

TEST(BruteBox, Limit) {
  try {
    brute_box(PointSet(testing::random_points(kBoxOracleLimit + 1, 50, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OracleLimitExceeded);
  }
}

TEST(CrossCheck, SquareAgrees) {
  auto r = cross_check(PointSet(testing::unit_square()));
  EXPECT_EQ(r.violations(), 0u);
  EXPECT_FALSE(r.entries.empty());
  EXPECT_EQ(r.instance, "0 0\n1 0\n1 1\n0 1\n");
}

TEST(CrossCheck, CollinearRunsEveryPair) {
  auto r = cross_check(PointSet({{0, 0}, {1, 0}, {3, 0}}));
  EXPECT_EQ(r.violations(), 0u);
  std::vector<std::string> names;
  for (const auto& e : r.entries) names.push_back(e.check);
  for (const char* want : {"collinear naive vs yao", "collinear naive vs brute_interval", "box naive vs brute_box",
                           "box naive vs speedup", "box vs collinear"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}

TEST(CrossCheck, RandomInstancesAgree) {
  EXPECT_EQ(cross_check(PointSet(generate_instance(6, Distribution::Uniform, 0))).violations(), 0u);
  for (std::uint64_t seed = 1; seed < 25; ++seed) {
    PointSet ps(generate_instance(2 + seed % 7, Distribution::Uniform, seed));
    auto r = cross_check(ps);
    EXPECT_EQ(r.violations(), 0u) << r.instance;
  }
}

TEST(CrossCheck, FlagsDisagreement) {
  // A report entry with agree=false counts as a violation.
  CrossCheckReport r;
  r.entries.push_back({"x", true, ""});
  r.entries.push_back({"y", false, "1 vs 2"});
  EXPECT_EQ(r.violations(), 1u);
}

}  // namespace
}  // namespace pants
