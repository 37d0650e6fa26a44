// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "psin/combinatorics.hpp"
#include "psin/errors.hpp"

namespace psin {
namespace {

// Pascal's triangle in uint64 arithmetic, exact up to n = 60.
std::vector<std::vector<std::uint64_t>> pascal(std::size_t rows) {
  std::vector<std::vector<std::uint64_t>> t(rows + 1);
  for (std::size_t n = 0; n <= rows; ++n) {
    t[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

// Counts length-`parts` vectors with entries in [0, total] summing to `total`.
std::uint64_t brute_force_count(std::uint32_t total, std::size_t parts) {
  if (parts == 1) return 1;
  std::uint64_t acc = 0;
  for (std::uint32_t first = 0; first <= total; ++first) acc += brute_force_count(total - first, parts - 1);
  return acc;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Binomial, MatchesPascalTriangle) {
  const auto t = pascal(60);
  for (std::uint64_t n = 0; n <= 60; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      EXPECT_EQ(binomial(n, k).raw(), mpz_class(static_cast<unsigned long>(t[n][k]))) << n << " " << k;
    }
    EXPECT_TRUE(binomial(n, n + 1).is_zero());
  }
}

TEST(Binomial, LargeValuesConvertWithoutOverflow) {
  const BigCount c = binomial(100000 + 999, 1000);
  EXPECT_TRUE(std::isinf(c.to_double()));
  // log C(n, k) via lgamma as an independent estimate.
  const double expected = std::lgamma(100000.0 + 999 + 1) - std::lgamma(1001.0) - std::lgamma(100000.0);
  EXPECT_LT(relative(c.log(), expected), 1e-12);
}

TEST(Compositions, CountMatchesBruteForce) {
  for (std::uint32_t total = 0; total <= 7; ++total) {
    for (std::size_t parts = 1; parts <= 5; ++parts) {
      EXPECT_EQ(count_compositions(total, parts).raw(), mpz_class(static_cast<unsigned long>(brute_force_count(total, parts))));
    }
  }
}

TEST(Compositions, EnumerationIsCanonicalAndComplete) {
  for (std::uint32_t total = 0; total <= 6; ++total) {
    for (std::size_t parts = 1; parts <= 4; ++parts) {
      const auto all = compositions(total, parts);
      ASSERT_EQ(all.size(), brute_force_count(total, parts));
      std::set<ModeVector> seen(all.begin(), all.end());
      EXPECT_EQ(seen.size(), all.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].total(), total);
        EXPECT_EQ(all[i].size(), parts);
        if (i > 0) {
          EXPECT_TRUE(CanonicalOrder{}(all[i - 1], all[i]));
        }
      }
      EXPECT_EQ(all.front(), first_composition(total, parts));
    }
  }
}

TEST(Compositions, SmallExampleOrder) {
  const auto all = compositions(2, 3);
  const std::vector<ModeVector> expected = {ModeVector{2, 0, 0}, ModeVector{1, 1, 0}, ModeVector{1, 0, 1},
                                            ModeVector{0, 2, 0}, ModeVector{0, 1, 1}, ModeVector{0, 0, 2}};
  EXPECT_EQ(all, expected);
}

TEST(Compositions, LastHasNoSuccessor) {
  ModeVector last({0, 0, 3});
  EXPECT_FALSE(next_composition(last));
  EXPECT_EQ(last, (ModeVector{0, 0, 3}));
  ModeVector single({4});
  EXPECT_FALSE(next_composition(single));
}

TEST(Compositions, ErrorsAndCap) {
  EXPECT_THROW(count_compositions(3, 0), std::invalid_argument);
  EXPECT_THROW(first_composition(3, 0), std::invalid_argument);
  EXPECT_THROW(compositions(30, 30), CapExceeded);
}

TEST(FallingRatio, ExactMatchesProductAndBinomialForms) {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (std::uint64_t m = 1; m <= 12; ++m) {
      BigRatio product(1);
      for (std::uint64_t k = 1; k <= n; ++k) {
        const std::uint64_t j = k - 1;
        BigRatio factor(mpz_class(static_cast<unsigned long>(n - j)), mpz_class(static_cast<unsigned long>(n + m - 1 - j)));
        factor.canonicalize();
        product *= factor;
        EXPECT_EQ(falling_ratio_exact(n, m, k), product);
      }
      // First term N/(N+M-1), last term 1/C(N+M-1, N).
      BigRatio first(mpz_class(static_cast<unsigned long>(n)), mpz_class(static_cast<unsigned long>(n + m - 1)));
      first.canonicalize();
      EXPECT_EQ(falling_ratio_exact(n, m, 1), first);
      EXPECT_EQ(falling_ratio_exact(n, m, n), BigRatio(mpz_class(1), binomial(n + m - 1, n).raw()));
    }
  }
}

TEST(FallingRatio, RangeErrors) {
  EXPECT_THROW(falling_ratio_exact(3, 2, 0), std::invalid_argument);
  EXPECT_THROW(falling_ratio_exact(3, 2, 4), std::invalid_argument);
  EXPECT_THROW(falling_ratio_term(3, 0, 1), std::invalid_argument);
  EXPECT_THROW(falling_ratio_series(3, 0), std::invalid_argument);
  EXPECT_TRUE(falling_ratio_series(0, 4).empty());
}

TEST(FallingRatio, LogSpaceAgreesWithExactOnOverlapGrid) {
  for (std::uint64_t n = 1; n <= 30; ++n) {
    for (std::uint64_t m = 1; m <= 30; ++m) {
      for (std::uint64_t k = 1; k <= n; ++k) {
        const double exact = falling_ratio_exact(n, m, k).get_d();
        const LogProb term = falling_ratio_term(n, m, k);
        EXPECT_LT(relative(term.value(), exact), 1e-12);
        EXPECT_LT(relative(std::exp(term.log_value()), exact), 1e-12);
        const LogProb fl = falling_ratio_float(n, m, k);
        EXPECT_LT(relative(fl.value(), exact), 1e-12);
        EXPECT_LT(relative(std::exp(fl.log_value()), exact), 1e-12);
      }
    }
  }
}

TEST(FallingRatio, FloatPathAgreesWithExactAboveCrossover) {
  // N + M > 200 takes the float path; compare against the exact ratio in log space.
  for (auto [n, m] : {std::pair<std::uint64_t, std::uint64_t>{150, 100}, {40, 500}, {300, 300}, {1000, 2000}}) {
    ASSERT_GT(n + m, kExactCrossover);
    for (std::uint64_t k : {std::uint64_t{1}, n / 2, n}) {
      const double exact_log = log_of(falling_ratio_exact(n, m, k));
      EXPECT_LT(std::abs(falling_ratio_term(n, m, k).log_value() - exact_log), 1e-12 * std::max(1.0, std::abs(exact_log)));
    }
  }
}

TEST(FallingRatio, SeriesIsBitIdenticalToTerms) {
  for (auto [n, m] : {std::pair<std::uint64_t, std::uint64_t>{1, 1}, {7, 3}, {30, 30}, {150, 50}, {120, 100000}}) {
    const auto series = falling_ratio_series(n, m);
    ASSERT_EQ(series.size(), n);
    for (std::uint64_t k = 1; k <= n; ++k) {
      const LogProb t = falling_ratio_term(n, m, k);
      EXPECT_EQ(series[k - 1].log_value(), t.log_value());
      EXPECT_EQ(series[k - 1].value(), t.value());
    }
  }
}

TEST(FallingRatio, ExtremeInstanceStaysFiniteAndPositive) {
  const auto series = falling_ratio_series(1000, 100000);
  double previous = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double l = series[i].log_value();
    ASSERT_TRUE(std::isfinite(l)) << i;
    ASSERT_FALSE(series[i].is_zero());
    if (i > 0) {
      EXPECT_LT(l, previous);
    }
    previous = l;
  }
  // Last term is 1/C(100999, 1000).
  EXPECT_LT(relative(series.back().log_value(), -binomial(100999, 1000).log()), 1e-12);
}

TEST(FallingRatio, NIsOneGivesExactlyOneOverM) {
  for (std::uint64_t m = 1; m <= 100000; m = m * 3 + 1) {
    EXPECT_EQ(falling_ratio_term(1, m, 1).value(), 1.0 / static_cast<double>(m)) << m;
  }
}

// Hand-rolled generator over (N, M) for the ordering properties.
struct OrderingCase {
  std::uint64_t n, m;
};

std::vector<OrderingCase> ordering_cases(std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> n_dist(2, 60);
  std::uniform_int_distribution<std::uint64_t> m_dist(2, 400);
  std::vector<OrderingCase> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({n_dist(rng), m_dist(rng)});
  return out;
}

TEST(FallingRatioProperty, CoefficientsDecreaseInM) {
  for (const auto& c : ordering_cases(200)) {
    for (std::uint64_t k = 1; k <= c.n; ++k) {
      EXPECT_GT(falling_ratio_exact(c.n, c.m, k), falling_ratio_exact(c.n, c.m + 1, k)) << c.n << " " << c.m << " " << k;
    }
  }
}

TEST(FallingRatioProperty, OrderingAgainstBaselines) {
  for (const auto& c : ordering_cases(200)) {
    const BigRatio one_over_m(mpz_class(1), mpz_class(static_cast<unsigned long>(c.m)));
    BigRatio n_over_m(mpz_class(static_cast<unsigned long>(c.n)), mpz_class(static_cast<unsigned long>(c.m)));
    n_over_m.canonicalize();
    EXPECT_GT(falling_ratio_exact(c.n, c.m, 1), one_over_m);
    EXPECT_LT(falling_ratio_exact(c.n, c.m, c.n), one_over_m);
    if (c.m > c.n) {
      for (std::uint64_t k = 1; k <= c.n; ++k) EXPECT_LT(falling_ratio_exact(c.n, c.m, k), n_over_m);
    }
  }
}

TEST(LogProb, ArithmeticMatchesLinear) {
  const LogProb a = LogProb::from_value(0.25);
  const LogProb b = LogProb::from_value(0.125);
  EXPECT_EQ((a * b).value(), 0.03125);
  EXPECT_EQ((a + b).value(), 0.375);
  EXPECT_NEAR((a + b).log_value(), std::log(0.375), 1e-15);
  EXPECT_TRUE((a * LogProb::zero()).is_zero());
  EXPECT_EQ((a + LogProb::zero()).value(), 0.25);
  EXPECT_EQ(LogProb::one().value(), 1.0);
  EXPECT_TRUE(LogProb::from_value(0.0).is_zero());
  EXPECT_THROW(LogProb::from_value(-1.0), std::invalid_argument);
  EXPECT_EQ(LogProb::zero().log_value(), -std::numeric_limits<double>::infinity());
}

TEST(LogProb, TinyValuesKeepTheirLog) {
  const LogProb tiny = LogProb::from_log(-5000.0);
  EXPECT_FALSE(tiny.is_zero());
  EXPECT_FALSE(tiny.representable());
  EXPECT_EQ(tiny.value(), 0.0);
  const LogProb sum = tiny + tiny;
  EXPECT_NEAR(sum.log_value(), -5000.0 + std::log(2.0), 1e-12);
  const LogProb product = tiny * LogProb::from_value(0.5);
  EXPECT_NEAR(product.log_value(), -5000.0 + std::log(0.5), 1e-12);
}

TEST(LogOf, HandlesRatiosBeyondDoubleRange) {
  const BigRatio r(mpz_class(1), binomial(4000, 2000).raw());
  const double expected = -(std::lgamma(4001.0) - 2 * std::lgamma(2001.0));
  EXPECT_LT(relative(log_of(r), expected), 1e-12);
  EXPECT_THROW(log_of(BigRatio(0)), std::domain_error);
}

}  // namespace
}  // namespace psin
