#pragma once

// Reference distributions and p-values used by the audits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "randaudit/bounds.hpp"

namespace randaudit {

/// Upper tail P(X >= x) of chi-square with `df` degrees of freedom.
inline double chi_square_p_value(double statistic, double df) {
  if (df <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), statistic));
}

struct ChiSquare {
  double statistic = 0;
  double df = 0;
  double p_value = 1;
};

/// Pearson chi-square of observed counts against expected counts.
inline ChiSquare chi_square_test(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("chi_square_test: size mismatch");
  ChiSquare r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0) throw std::invalid_argument("chi_square_test: expected counts must be positive");
    const double d = observed[i] - expected[i];
    r.statistic += d * d / expected[i];
  }
  r.df = observed.size() > 0 ? static_cast<double>(observed.size() - 1) : 0;
  r.p_value = chi_square_p_value(r.statistic, r.df);
  return r;
}

/// Merges adjacent cells, in order, until every expected count reaches
/// `min_expected`; a short tail is folded into the last full cell.
inline void pool_cells(std::vector<double>& observed, std::vector<double>& expected, double min_expected) {
  std::vector<double> o, e;
  double acc_o = 0, acc_e = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= min_expected) {
      o.push_back(acc_o);
      e.push_back(acc_e);
      acc_o = acc_e = 0;
    }
  }
  if (acc_e > 0) {
    if (e.empty()) {
      o.push_back(acc_o);
      e.push_back(acc_e);
    } else {
      o.back() += acc_o;
      e.back() += acc_e;
    }
  }
  observed = std::move(o);
  expected = std::move(e);
}

/// Exact two-sided binomial p-value: total probability of outcomes no more
/// likely than the observed one. Sums the pmf directly, O(trials).
inline double binomial_two_sided_p_value(std::uint64_t successes, std::uint64_t trials, double p) {
  if (trials == 0) return 1.0;
  if (p <= 0) return successes == 0 ? 1.0 : 0.0;
  if (p >= 1) return successes == trials ? 1.0 : 0.0;
  const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  const double cutoff = boost::math::pdf(dist, static_cast<double>(successes)) * (1 + 1e-7);
  double total = 0;
  for (std::uint64_t y = 0; y <= trials; ++y) {
    const double q = boost::math::pdf(dist, static_cast<double>(y));
    if (q <= cutoff) total += q;
  }
  return std::min(1.0, total);
}

inline double normal_two_sided_p_value(double z) {
  return 2 * boost::math::cdf(boost::math::complement(boost::math::normal(), std::fabs(z)));
}

/// D_n, permutations of n items with no fixed point.
inline BigCount derangements(std::uint64_t n) {
  if (n == 0) return 1;
  BigCount prev2 = 1, prev1 = 0;  // D_0, D_1
  for (std::uint64_t i = 2; i <= n; ++i) {
    BigCount next = (i - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

/// Permutations of n items with exactly j fixed points: C(n, j) D_{n-j}.
inline BigCount rencontres(std::uint64_t n, std::uint64_t j) {
  if (j > n) return 0;
  return binomial(n, j) * derangements(n - j);
}

inline std::uint64_t fixed_points(std::span<const std::uint64_t> perm) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) c += perm[i] == i + 1;
  return c;
}

/// Spearman rank correlation of two permutations of {1..n}.
inline double spearman_rho(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("spearman_rho: need equal sizes >= 2");
  const double n = static_cast<double>(a.size());
  double sum_d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum_d2 += d * d;
  }
  return 1 - 6 * sum_d2 / (n * (n * n - 1));
}

/// Lexicographic rank of a k-subset of {1..n} in [0, C(n,k)).
inline std::uint64_t subset_rank(std::vector<std::uint64_t> subset, std::uint64_t n) {
  std::sort(subset.begin(), subset.end());
  const std::uint64_t k = subset.size();
  std::uint64_t rank = 0;
  std::uint64_t prev = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (std::uint64_t v = prev + 1; v < subset[i]; ++v) rank += binomial(n - v, k - i - 1).convert_to<std::uint64_t>();
    prev = subset[i];
  }
  return rank;
}

}  // namespace randaudit
