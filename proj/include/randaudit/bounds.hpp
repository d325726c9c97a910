#pragma once

// Exact counting and the pigeonhole bounds: how many samples or
// permutations a generator with a given state space can reach.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace randaudit {

using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Decimal = boost::multiprecision::cpp_dec_float_50;

namespace detail {

inline BigCount range_product(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return 1;
  if (hi - lo < 8) {
    BigCount p = 1;
    for (std::uint64_t i = lo; i <= hi; ++i) p *= i;
    return p;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return range_product(lo, mid) * range_product(mid + 1, hi);
}

}  // namespace detail

inline BigCount factorial(std::uint64_t n) { return detail::range_product(2, n); }

inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("binomial: k exceeds n");
  if (k > n - k) k = n - k;
  BigCount c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

inline BigCount power(std::uint64_t n, std::uint64_t k) { return boost::multiprecision::pow(BigCount(n), static_cast<unsigned>(k)); }

inline BigCount power_of_two(std::uint64_t bits) { return BigCount(1) << bits; }

/// Decimal rendering with `digits` significant digits, e.g. "0.418" or
/// "1.04e+42".
inline std::string format_significant(const Decimal& x, int digits) {
  std::ostringstream out;
  if (x == 0) return "0";
  const Decimal ax = abs(x);
  if (ax >= Decimal("1e-4") && ax < Decimal("1e6")) {
    const int exp10 = static_cast<int>(std::floor(log10(ax).convert_to<double>()));
    out << std::fixed << std::setprecision(std::max(0, digits - 1 - exp10)) << x;
  } else {
    out << std::scientific << std::setprecision(digits - 1) << x;
  }
  return out.str();
}

inline std::string format_significant(const BigRational& r, int digits) {
  return format_significant(Decimal(numerator(r)) / Decimal(denominator(r)), digits);
}

/// Attainable fraction min(1, states / target) and the L1 lower bound
/// 2 max(0, 1 - states / target).
struct AttainabilityReport {
  BigCount states;
  BigCount target;
  BigRational fraction;
  BigRational l1_bound;

  std::string fraction_text(int digits = 6) const { return format_significant(fraction, digits); }
  std::string l1_text(int digits = 6) const { return format_significant(l1_bound, digits); }
  double fraction_double() const { return fraction.convert_to<double>(); }
  double l1_double() const { return l1_bound.convert_to<double>(); }
};

inline AttainabilityReport attainability(const BigCount& states, const BigCount& target) {
  if (states < 1) throw std::invalid_argument("state space must be nonempty");
  if (target < 1) throw std::invalid_argument("target count must be at least 1");
  AttainabilityReport r{states, target, 1, 0};
  if (states < target) {
    r.fraction = BigRational(states, target);
    r.l1_bound = 2 * (1 - r.fraction);
  }
  return r;
}

inline AttainabilityReport attainable_fraction(std::uint64_t state_bits, const BigCount& target) {
  if (state_bits < 1) throw std::invalid_argument("state_bits must be at least 1");
  return attainability(power_of_two(state_bits), target);
}

/// sqrt(2 pi) n^(n+1/2) e^-n <= n! <= e n^(n+1/2) e^-n.
inline std::pair<Decimal, Decimal> stirling_bounds(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("stirling_bounds: n must be at least 1");
  const Decimal dn(n);
  const Decimal core = pow(dn, dn + Decimal(0.5));
  const Decimal lower = sqrt(2 * boost::math::constants::pi<Decimal>()) * core * exp(-dn);
  const Decimal upper = core * exp(1 - dn);
  return {lower, upper};
}

/// Binary entropy in bits, with H(0) = H(1) = 0.
inline Decimal binary_entropy(const Decimal& q) {
  if (q <= 0 || q >= 1) return 0;
  return -(q * log(q) + (1 - q) * log(1 - q)) / log(Decimal(2));
}

/// 2^(n H(k/n)) / (n + 1) <= C(n, k) <= 2^(n H(k/n)).
inline std::pair<Decimal, Decimal> entropy_bounds(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || k >= n) throw std::invalid_argument("entropy_bounds needs 0 < k < n");
  const Decimal upper = pow(Decimal(2), Decimal(n) * binary_entropy(Decimal(k) / Decimal(n)));
  return {upper / Decimal(n + 1), upper};
}

/// m^(m(l-1)+1) / (sqrt(l) (m-1)^((m-1)(l-1))) <= C(lm, l).
inline Decimal stirling_combination_bound(std::uint64_t l, std::uint64_t m) {
  if (l < 1 || m < 1) throw std::invalid_argument("stirling_combination_bound needs l >= 1 and m >= 1");
  if (m == 1) return 1 / sqrt(Decimal(l));
  const Decimal num = pow(Decimal(m), Decimal(m * (l - 1) + 1));
  const Decimal den = sqrt(Decimal(l)) * pow(Decimal(m - 1), Decimal((m - 1) * (l - 1)));
  return num / den;
}

// --- log-scale comparisons ----------------------------------------------------

inline double log10_factorial(double n) { return boost::math::lgamma(n + 1) / std::log(10.0); }

inline double log10_binomial(double n, double k) {
  return (boost::math::lgamma(n + 1) - boost::math::lgamma(k + 1) - boost::math::lgamma(n - k + 1)) / std::log(10.0);
}

inline Decimal log10_factorial_precise(std::uint64_t n) {
  return boost::math::lgamma(Decimal(n) + 1) / log(Decimal(10));
}

/// Scientific rendering of 10^x, e.g. 6013.57 -> "3.73e+6013".
inline std::string scientific_from_log10(double x, int digits = 3) {
  const double e = std::floor(x);
  double mant = std::pow(10.0, x - e);
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits - 1) << mant;
  std::string m = out.str();
  long exponent = static_cast<long>(e);
  if (m.rfind("10", 0) == 0) {  // mantissa rounded up to 10
    std::ostringstream again;
    again << std::fixed << std::setprecision(digits - 1) << mant / 10;
    m = again.str();
    ++exponent;
  }
  return m + "e+" + std::to_string(exponent);
}

inline std::string scientific(const BigCount& v, int digits = 3) {
  if (v < 1) return "0";
  const std::string s = v.str();
  if (s.size() <= 1) return s + "." + std::string(static_cast<std::size_t>(digits - 1), '0') + "e+0";
  Decimal d(v);
  std::ostringstream out;
  out << std::scientific << std::setprecision(digits - 1) << d;
  std::string r = out.str();
  const auto e = r.find("e+");
  const auto nz = r.find_first_not_of('0', e + 2);
  return r.substr(0, e + 2) + (nz == std::string::npos ? "0" : r.substr(nz));
}

// --- the pigeonhole table -----------------------------------------------------

struct Table1Row {
  std::string feature;
  std::string size;
  std::string full;        // exact decimal, empty when not printed
  std::string scientific;  // 3 significant digits, or a bound
};

struct Table1Section {
  std::string label;
  std::vector<Table1Row> rows;
  std::string fraction_text;  // at printed precision
  BigRational fraction;       // exact where finite
};

struct Table1Report {
  std::vector<Table1Section> sections;
  /// MT row: log10 of 2^19968, 2084!, C(3.9e8, 1000).
  double log10_mt_states = 0;
  double log10_fact_2084 = 0;
  double log10_mt_samples = 0;
  double mt_fraction_upper = 0;  // 2^19968 / C(3.9e8, 1000)
  bool fact_2084_exceeds_mt_by_logs = false;
  bool fact_2084_exceeds_mt_exact = false;

  void write_text(std::ostream& out) const;
  void write_csv(std::ostream& out) const;
};

inline Table1Report table1_report() {
  Table1Report rep;
  struct Spec {
    unsigned bits;
    unsigned perm_n;
    unsigned pop;
    unsigned k;
    int printed_digits;
    bool full;
  };
  const Spec specs[] = {{32, 13, 50, 10, 3, true}, {64, 21, 500, 10, 3, true}, {128, 35, 500, 25, 4, false}};
  for (const auto& s : specs) {
    Table1Section sec;
    sec.label = std::to_string(s.bits) + "-bit state space";
    const BigCount states = power_of_two(s.bits);
    const BigCount perms = factorial(s.perm_n);
    const BigCount samples = binomial(s.pop, s.k);
    auto row = [&](std::string feature, std::string size, const BigCount& v, bool full) {
      sec.rows.push_back({std::move(feature), std::move(size), full ? v.str() : "", scientific(v)});
    };
    row(sec.label, "2^" + std::to_string(s.bits), states, s.full);
    row("Permutations of " + std::to_string(s.perm_n), std::to_string(s.perm_n) + "!", perms, s.full);
    row("Samples of " + std::to_string(s.k) + " out of " + std::to_string(s.pop),
        "C(" + std::to_string(s.pop) + "," + std::to_string(s.k) + ")", samples, s.full && s.pop < 100);
    const auto a = attainable_fraction(s.bits, samples);
    sec.fraction = a.fraction;
    // Printed to 3 decimals for the first two, 4 decimals for the third.
    std::ostringstream f;
    f << std::fixed << std::setprecision(s.printed_digits) << Decimal(numerator(a.fraction)) / Decimal(denominator(a.fraction));
    sec.fraction_text = f.str();
    rep.sections.push_back(std::move(sec));
  }

  const double ln10 = std::log(10.0);
  rep.log10_mt_states = 32.0 * 624.0 * std::log(2.0) / ln10;
  rep.log10_fact_2084 = log10_factorial(2084);
  rep.log10_mt_samples = log10_binomial(3.9e8, 1000);
  rep.mt_fraction_upper = std::pow(10.0, rep.log10_mt_states - rep.log10_mt_samples);
  rep.fact_2084_exceeds_mt_by_logs = log10_factorial_precise(2084) > Decimal(32 * 624) * log10(Decimal(2));
  rep.fact_2084_exceeds_mt_exact = factorial(2084) > power_of_two(32 * 624);

  Table1Section mt;
  mt.label = "MT state space";
  mt.rows.push_back({"MT state space", "2^(32*624)", "", scientific_from_log10(rep.log10_mt_states)});
  mt.rows.push_back({"Permutations of 2084", "2084!", "", scientific_from_log10(rep.log10_fact_2084)});
  mt.rows.push_back({"Samples of 1000 out of 390 million", "C(3.9e8,1000)", "",
                     scientific_from_log10(rep.log10_mt_samples)});
  {
    std::ostringstream f;
    f << std::scientific << std::setprecision(2) << rep.mt_fraction_upper;
    mt.fraction_text = f.str();
  }
  rep.sections.push_back(std::move(mt));
  return rep;
}

inline void Table1Report::write_text(std::ostream& out) const {
  for (const auto& sec : sections) {
    for (const auto& r : sec.rows) {
      out << std::left << std::setw(38) << r.feature << std::setw(16) << r.size << std::setw(30)
          << (r.full.empty() ? "" : r.full) << r.scientific << '\n';
    }
    out << std::left << std::setw(38) << "Fraction of attainable samples" << std::setw(16) << "" << sec.fraction_text
        << '\n'
        << '\n';
  }
  out << "2084! > 2^19968: " << (fact_2084_exceeds_mt_exact ? "yes" : "no") << " (exact), "
      << (fact_2084_exceeds_mt_by_logs ? "yes" : "no") << " (log-gamma)\n";
}

inline void Table1Report::write_csv(std::ostream& out) const {
  out << "section,feature,size,full,scientific\n";
  for (const auto& sec : sections) {
    for (const auto& r : sec.rows) {
      out << '"' << sec.label << "\",\"" << r.feature << "\",\"" << r.size << "\"," << r.full << ',' << r.scientific
          << '\n';
    }
    out << '"' << sec.label << "\",\"Fraction of attainable samples\",,," << sec.fraction_text << '\n';
  }
}

}  // namespace randaudit
