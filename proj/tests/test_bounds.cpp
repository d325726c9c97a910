#include <gtest/gtest.h>

#include <sstream>

#include "randaudit/bounds.hpp"
#include "support/bound_sweeps.hpp"

using namespace randaudit;
using namespace randaudit::testing;

TEST(Counting, FactorialMatchesNaiveProduct) {
  const auto f = naive_factorials(500);
  for (std::uint64_t n = 0; n <= 500; ++n) ASSERT_EQ(factorial(n), f[n]) << n;
}

TEST(Counting, BinomialMatchesPascal) {
  const auto c = pascal(300);
  for (std::uint64_t n = 0; n <= 300; ++n) {
    for (std::uint64_t k = 0; k <= n; ++k) ASSERT_EQ(binomial(n, k), c[n][k]) << n << "," << k;
  }
  EXPECT_THROW(binomial(3, 4), std::invalid_argument);
}

TEST(Counting, KnownValues) {
  EXPECT_EQ(factorial(13), BigCount(6227020800ULL));
  EXPECT_EQ(binomial(50, 10), BigCount(10272278170ULL));
  EXPECT_EQ(factorial(21).str(), "51090942171709440000");
  EXPECT_EQ(power(3, 4), 81);
  EXPECT_EQ(power_of_two(70), BigCount(1) << 70);
}

TEST(Attainability, Examples) {
  const auto a = attainability(8, 720);
  EXPECT_EQ(a.fraction, BigRational(1, 90));
  EXPECT_EQ(a.l1_bound, BigRational(178, 90));

  const auto lcg = attainability(256, 720);
  EXPECT_EQ(lcg.fraction_text(), "0.355556");
  EXPECT_EQ(lcg.l1_text(), "1.28889");

  const auto full = attainable_fraction(32, BigCount(1) << 32);
  EXPECT_EQ(full.fraction, 1);
  EXPECT_EQ(full.l1_bound, 0);
  const auto plenty = attainable_fraction(64, 1000);
  EXPECT_EQ(plenty.fraction, 1);

  EXPECT_THROW(attainability(0, 5), std::invalid_argument);
  EXPECT_THROW(attainability(5, 0), std::invalid_argument);
}

TEST(Attainability, FractionShrinksWithTarget) {
  BigRational prev = 2;
  for (std::uint64_t n = 1; n <= 30; ++n) {
    const auto a = attainable_fraction(32, factorial(n));
    EXPECT_LE(a.fraction, prev);
    EXPECT_EQ(a.l1_bound, 2 * (1 - a.fraction));
    prev = a.fraction;
  }
}

TEST(Stirling, SmallCase) {
  const auto [lo, hi] = stirling_bounds(5);
  EXPECT_NEAR(lo.convert_to<double>(), 118.019, 1e-3);
  EXPECT_NEAR(hi.convert_to<double>(), 127.99, 1e-2);
}

TEST(Stirling, SweepHasNoViolations) {
  const auto r = stirling_sweep(200);
  EXPECT_EQ(r.checked, 200U);
  EXPECT_EQ(r.violations, 0U) << r.first_violation;
}

TEST(Entropy, SmallCase) {
  const auto [lo, hi] = entropy_bounds(4, 2);
  EXPECT_NEAR(lo.convert_to<double>(), 3.2, 1e-12);
  EXPECT_NEAR(hi.convert_to<double>(), 16.0, 1e-12);
  EXPECT_THROW(entropy_bounds(4, 0), std::invalid_argument);
  EXPECT_THROW(entropy_bounds(4, 4), std::invalid_argument);
}

TEST(Entropy, BinaryEntropyShape) {
  EXPECT_EQ(binary_entropy(0), 0);
  EXPECT_EQ(binary_entropy(1), 0);
  EXPECT_NEAR(binary_entropy(Decimal(0.5)).convert_to<double>(), 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(Decimal(3) / 10).convert_to<double>(), binary_entropy(Decimal(7) / 10).convert_to<double>(), 1e-15);
}

TEST(Entropy, SweepHasNoViolations) {
  const auto r = entropy_sweep(100);
  EXPECT_EQ(r.checked, 99U * 100U / 2U);
  EXPECT_EQ(r.violations, 0U) << r.first_violation;
}

TEST(CombinationBound, SmallCase) {
  EXPECT_NEAR(stirling_combination_bound(2, 3).convert_to<double>(), 81.0 / (4.0 * std::sqrt(2.0)), 1e-12);
  EXPECT_LE(stirling_combination_bound(2, 3), Decimal(15));
}

TEST(CombinationBound, SweepHasNoViolations) {
  const auto r = combination_sweep(10, 10);
  EXPECT_EQ(r.checked, 100U);
  EXPECT_EQ(r.violations, 0U) << r.first_violation;
}

TEST(Formatting, Significant) {
  EXPECT_EQ(format_significant(BigRational(1, 3), 3), "0.333");
  EXPECT_EQ(format_significant(Decimal("1.0432e42"), 3), "1.04e+42");
  EXPECT_EQ(scientific(factorial(13)), "6.23e+9");
  EXPECT_EQ(scientific(BigCount(7)), "7.00e+0");
  EXPECT_EQ(scientific_from_log10(2.0), "1.00e+2");
  EXPECT_EQ(scientific_from_log10(std::log10(9.996e7)), "1.00e+8");
}

TEST(LogScale, AgreesWithExactCounts) {
  for (std::uint64_t n : {10U, 50U, 300U, 2084U}) {
    const double exact = log10_factorial_precise(n).convert_to<double>();
    EXPECT_NEAR(log10_factorial(static_cast<double>(n)), exact, 1e-9 * exact);
    EXPECT_EQ(scientific_from_log10(exact), scientific(factorial(n))) << n;
  }
  EXPECT_NEAR(log10_binomial(500, 25), std::log10(binomial(500, 25).convert_to<double>()), 1e-9);
}

TEST(Table1, PrintedFractions) {
  const auto t = table1_report();
  ASSERT_EQ(t.sections.size(), 4U);
  EXPECT_EQ(t.sections[0].fraction_text, "0.418");
  EXPECT_EQ(t.sections[1].fraction_text, "0.075");
  EXPECT_EQ(t.sections[2].fraction_text, "0.0003");
  EXPECT_EQ(t.sections[0].fraction, BigRational(BigCount(1) << 32, BigCount(10272278170ULL)));
}

TEST(Table1, ExactRows) {
  const auto t = table1_report();
  EXPECT_EQ(t.sections[0].rows[0].full, "4294967296");
  EXPECT_EQ(t.sections[0].rows[1].full, "6227020800");
  EXPECT_EQ(t.sections[0].rows[2].full, "10272278170");
  EXPECT_EQ(t.sections[1].rows[1].full, "51090942171709440000");
  EXPECT_EQ(t.sections[1].rows[2].scientific, "2.46e+20");
  EXPECT_EQ(t.sections[2].rows[0].scientific, "3.40e+38");
  EXPECT_EQ(t.sections[2].rows[1].scientific, "1.03e+40");
  EXPECT_EQ(t.sections[2].rows[2].scientific, "1.04e+42");
}

TEST(Table1, MersenneTwisterRow) {
  const auto t = table1_report();
  EXPECT_EQ(t.sections[3].rows[0].scientific, "9.27e+6010");
  EXPECT_EQ(t.sections[3].rows[1].scientific, "3.73e+6013");
  EXPECT_LT(t.mt_fraction_upper, 1.66e-6);
  EXPECT_TRUE(t.fact_2084_exceeds_mt_exact);
  EXPECT_TRUE(t.fact_2084_exceeds_mt_by_logs);
  EXPECT_FALSE(factorial(2080) > power_of_two(19968));
}

TEST(Table1, Writers) {
  const auto t = table1_report();
  std::ostringstream text, csv;
  t.write_text(text);
  t.write_csv(csv);
  EXPECT_NE(text.str().find("0.418"), std::string::npos);
  EXPECT_NE(csv.str().find("section,feature"), std::string::npos);
  EXPECT_NE(csv.str().find("6227020800"), std::string::npos);
}
