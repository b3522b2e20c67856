#include <gtest/gtest.h>

#include <random>

#include "whitehead/smith.hpp"

using namespace whitehead;

namespace {

IntegerMatrix dense(const std::vector<std::vector<std::int64_t>>& rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.add(r, c, rows[r][c]);
  return m;
}

std::vector<BigInt> big(std::initializer_list<long long> xs) {
  std::vector<BigInt> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

// Determinantal divisors d_k = gcd of all k×k minors, by cofactor expansion.
BigInt det(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return total;
}

std::vector<BigInt> by_minors(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::vector<BigInt> divisors{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    BigInt g = 0;
    for (std::uint32_t rmask = 0; rmask < (1U << rows); ++rmask) {
      if (static_cast<std::size_t>(__builtin_popcount(rmask)) != k) continue;
      for (std::uint32_t cmask = 0; cmask < (1U << cols); ++cmask) {
        if (static_cast<std::size_t>(__builtin_popcount(cmask)) != k) continue;
        std::vector<std::vector<BigInt>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!(rmask >> r & 1U)) continue;
          std::vector<BigInt> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (cmask >> c & 1U) row.emplace_back(m[r][c]);
          sub.push_back(row);
        }
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(det(sub)));
      }
    }
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

}  // namespace

TEST(Smith, KnownExamples) {
  EXPECT_EQ(invariant_factors(dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})), big({2, 6, 12}));
  EXPECT_EQ(invariant_factors(dense({{2, 0}, {0, 3}})), big({1, 6}));
  EXPECT_EQ(invariant_factors(dense({{0, 0}, {0, 0}})), big({}));
  EXPECT_EQ(invariant_factors(dense({{1, 1}, {1, -1}})), big({1, 2}));
  EXPECT_EQ(invariant_factors(IntegerMatrix(0, 5)), big({}));
}

TEST(Smith, DuplicateEntriesAddUp) {
  IntegerMatrix m(1, 1);
  m.add(0, 0, 2);
  m.add(0, 0, -2);
  EXPECT_TRUE(m.is_zero());
  m.add(0, 0, 3);
  EXPECT_EQ(m.at(0, 0), 3);
  EXPECT_THROW(m.add(1, 0, 1), domain_error);
}

TEST(Smith, AgreesWithDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_int_distribution<int> entry(-6, 6);
  std::bernoulli_distribution sparse(0.35);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = size(rng);
    const int c = size(rng);
    std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c, 0));
    for (auto& row : rows)
      for (auto& x : row) x = sparse(rng) ? 0 : entry(rng);
    const auto m = dense(rows);
    const auto f = invariant_factors(m);
    EXPECT_EQ(f, by_minors(rows));
    EXPECT_EQ(f.size(), rational_rank(m));
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
  }
}

TEST(Smith, OverflowFallsBackToArbitraryPrecision) {
  // Clearing under the pivot 3 needs 5 - 2·2^62, which leaves int64.
  const std::int64_t huge = std::int64_t{1} << 62;
  const auto m = dense({{3, huge}, {7, 5}});
  EXPECT_THROW(detail::invariant_factors_with<CheckedInt>(m), std::overflow_error);
  const auto f = invariant_factors(m);
  EXPECT_EQ(f, detail::invariant_factors_with<BigInt>(m));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], 1);
  EXPECT_EQ(f[1], BigInt(7) * BigInt(huge) - 15);
}

TEST(Smith, CheckedAndArbitraryPrecisionAgree) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    IntegerMatrix m(12, 15);
    for (int r = 0; r < 12; ++r)
      for (int c = 0; c < 15; ++c)
        if (rng() % 3 == 0) m.add(r, c, entry(rng));
    const auto f = invariant_factors(m);
    EXPECT_EQ(f, detail::invariant_factors_with<BigInt>(m));
    EXPECT_EQ(f.size(), rational_rank(m));
  }
}

TEST(Smith, Product) {
  const auto a = dense({{1, 2}, {3, 4}});
  const auto b = dense({{0, 1}, {1, 0}});
  const auto ab = a * b;
  EXPECT_EQ(ab.at(0, 0), 2);
  EXPECT_EQ(ab.at(0, 1), 1);
  EXPECT_EQ(ab.at(1, 0), 4);
  EXPECT_EQ(ab.at(1, 1), 3);
}

TEST(Smith, DenseRandomRankMatchesRationalRank) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    IntegerMatrix m(30, 40);
    for (int r = 0; r < 30; ++r)
      for (int c = 0; c < 40; ++c)
        if (rng() % 2 == 0) m.add(r, c, entry(rng));
    const auto f = invariant_factors(m);
    EXPECT_EQ(f.size(), rational_rank(m));
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
  }
}
