#pragma once

// Mapping generator words to integers on {1..m}.
//
// floor:       1 + floor(m * word / 2^w). Biased unless m is a power of 2.
// round:       nearest integer to m * word / 2^w, halves rounding up. The raw
//              value lies in {0..m}; randint_round clamps it into {1..m},
//              exact_distribution reports the raw law.
// mask_reject: take mu = bit_length(m - 1) bits, most significant first,
//              reject values above m - 1. Exactly uniform for uniform bits.
//
// All kernels use integer arithmetic. randint_textbook is the only
// floating-point path and exists to show the textbook formula's behavior.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "randaudit/bits.hpp"
#include "randaudit/errors.hpp"
#include "randaudit/generators.hpp"

namespace randaudit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class IntegerMethod { floor, round, mask_reject };

inline std::string to_string(IntegerMethod m) {
  switch (m) {
    case IntegerMethod::floor: return "floor";
    case IntegerMethod::round: return "round";
    case IntegerMethod::mask_reject: return "mask";
  }
  return "?";
}

inline IntegerMethod parse_integer_method(std::string_view s) {
  if (s == "floor") return IntegerMethod::floor;
  if (s == "round") return IntegerMethod::round;
  if (s == "mask" || s == "mask-reject" || s == "mask_reject") return IntegerMethod::mask_reject;
  throw std::invalid_argument("unknown integer method: " + std::string(s));
}

/// Number of bits mask-reject draws for range m: bit length of m - 1.
inline unsigned mask_bits(std::uint64_t m) { return m <= 1 ? 0U : static_cast<unsigned>(std::bit_width(m - 1)); }

/// Lower bound on values of {1..m} that floor can never produce.
inline std::uint64_t floor_unreachable_values(unsigned w, std::uint64_t m) {
  if (w >= 64) return 0;
  const std::uint64_t words = std::uint64_t{1} << w;
  return m > words ? m - words : 0;
}

/// A range multiplier num/den for the floor and round kernels. An integer
/// range m is {m, 1}; R's sample(m) with non-integer m corresponds to a
/// genuinely fractional multiplier.
struct Multiplier {
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  static Multiplier of(std::uint64_t m) { return {m, 1}; }

  void validate() const {
    if (num == 0 || den == 0) throw std::invalid_argument("multiplier must be positive");
    if (num >> 63 || den >> 63) throw std::invalid_argument("multiplier terms must be below 2^63");
  }

  friend bool operator==(const Multiplier&, const Multiplier&) = default;
};

inline std::uint64_t floor_value(std::uint64_t word, unsigned w, Multiplier mult) {
  const unsigned __int128 scaled = static_cast<unsigned __int128>(mult.num) * word / mult.den;
  return 1 + static_cast<std::uint64_t>(w >= 64 ? scaled >> 64 : scaled >> w);
}

inline std::uint64_t floor_value(std::uint64_t word, unsigned w, std::uint64_t m) {
  return floor_value(word, w, Multiplier::of(m));
}

/// Nearest integer to num * word / (den * 2^w), in {0..ceil(num/den)}.
inline std::uint64_t round_raw_value(std::uint64_t word, unsigned w, Multiplier mult) {
  const unsigned __int128 half = static_cast<unsigned __int128>(mult.den) << (w - 1);
  const unsigned __int128 scaled = (static_cast<unsigned __int128>(mult.num) * word + half) / mult.den;
  return static_cast<std::uint64_t>(w >= 64 ? scaled >> 64 : scaled >> w);
}

inline std::uint64_t round_raw_value(std::uint64_t word, unsigned w, std::uint64_t m) {
  return round_raw_value(word, w, Multiplier::of(m));
}

template <WordGenerator G>
std::uint64_t randint_floor(G& g, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("range m must be at least 1");
  const unsigned w = g.word_width();
  return floor_value(g.next_word(), w, m);
}

template <WordGenerator G>
std::uint64_t randint_floor_scaled(G& g, Multiplier mult) {
  mult.validate();
  const unsigned w = g.word_width();
  return floor_value(g.next_word(), w, mult);
}

/// Round method as a sampler would use it: raw value clamped into {1..m}.
template <WordGenerator G>
std::uint64_t randint_round(G& g, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("range m must be at least 1");
  const unsigned w = g.word_width();
  const std::uint64_t raw = round_raw_value(g.next_word(), w, m);
  return std::clamp<std::uint64_t>(raw, 1, m);
}

template <WordGenerator G>
std::uint64_t randint_round_scaled(G& g, Multiplier mult, std::uint64_t m) {
  mult.validate();
  const unsigned w = g.word_width();
  return std::clamp<std::uint64_t>(round_raw_value(g.next_word(), w, mult), 1, m);
}

/// Mask-and-reject. Bits left in a word carry over to the next attempt
/// within this call and are dropped when the call returns.
template <WordGenerator G>
std::uint64_t randint_mask(G& g, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("range m must be at least 1");
  const unsigned mu = mask_bits(m);
  if (mu == 0) return 1;
  BitPool<G> pool(g);
  for (;;) {
    const std::uint64_t r = pool.take(mu);
    if (r <= m - 1) return r + 1;
  }
}

template <WordGenerator G>
std::uint64_t randint(G& g, std::uint64_t m, IntegerMethod method) {
  switch (method) {
    case IntegerMethod::floor: return randint_floor(g, m);
    case IntegerMethod::round: return randint_round(g, m);
    case IntegerMethod::mask_reject: return randint_mask(g, m);
  }
  throw std::invalid_argument("bad integer method");
}

/// Textbook 1 + floor(m X) with X = word / 2^w in double precision.
template <WordGenerator G>
std::uint64_t randint_textbook(G& g, double m) {
  const unsigned w = g.word_width();
  const double x = std::ldexp(static_cast<double>(g.next_word()), -static_cast<int>(w));
  return 1 + static_cast<std::uint64_t>(std::floor(m * x));
}

/// Exact law of an integer method: value v has probability
/// counts[v - lowest] / denominator.
struct IntDistribution {
  IntegerMethod method = IntegerMethod::floor;
  unsigned width = 0;
  std::uint64_t m = 0;
  std::uint64_t lowest = 1;
  std::vector<std::uint64_t> counts;
  std::uint64_t denominator = 1;

  std::uint64_t highest() const { return lowest + counts.size() - 1; }

  Rational probability(std::uint64_t v) const {
    if (v < lowest || v > highest()) return 0;
    return Rational(counts[v - lowest], denominator);
  }

  /// Largest over smallest selection probability across {1..m}; nullopt
  /// when some value in {1..m} is unreachable.
  std::optional<Rational> max_min_ratio() const {
    std::uint64_t lo = UINT64_MAX, hi = 0;
    for (std::uint64_t v = 1; v <= m; ++v) {
      const std::uint64_t c = v >= lowest && v <= highest() ? counts[v - lowest] : 0;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (lo == 0) return std::nullopt;
    return Rational(hi, lo);
  }

  /// Same ratio over every value the method can emit (for round that
  /// includes the raw endpoint 0).
  std::optional<Rational> support_ratio() const {
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    if (*lo == 0) return std::nullopt;
    return Rational(*hi, *lo);
  }

  /// CSV rows "value,numerator,denominator"; probabilities are unreduced
  /// counts over 2^w (or over m for mask-reject).
  void write_csv(std::ostream& out) const {
    out << "value,numerator,denominator\n";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out << lowest + i << ',' << counts[i] << ',' << denominator << '\n';
    }
  }
};

inline constexpr unsigned kMaxEnumerationWidth = 24;
inline constexpr std::uint64_t kMaxDistributionRange = std::uint64_t{1} << 26;

inline IntDistribution exact_distribution(IntegerMethod method, unsigned w, std::uint64_t m) {
  if (w == 0) throw std::invalid_argument("word width must be at least 1");
  if (w > kMaxEnumerationWidth) throw InfeasibleSize("exact_distribution enumerates 2^w words; w must be <= 24");
  if (m == 0) throw std::invalid_argument("range m must be at least 1");
  if (m > kMaxDistributionRange) throw InfeasibleSize("range too large for a tabulated distribution");

  IntDistribution d;
  d.method = method;
  d.width = w;
  d.m = m;
  const std::uint64_t words = std::uint64_t{1} << w;
  switch (method) {
    case IntegerMethod::floor:
      d.lowest = 1;
      d.counts.assign(m, 0);
      d.denominator = words;
      for (std::uint64_t x = 0; x < words; ++x) ++d.counts[floor_value(x, w, m) - 1];
      break;
    case IntegerMethod::round:
      d.lowest = 0;
      d.counts.assign(m + 1, 0);
      d.denominator = words;
      for (std::uint64_t x = 0; x < words; ++x) ++d.counts[round_raw_value(x, w, m)];
      break;
    case IntegerMethod::mask_reject:
      // Every accepted mu-bit pattern maps to one value and rejected ones
      // are redrawn, so the law is 1/m on each value.
      d.lowest = 1;
      d.counts.assign(m, 1);
      d.denominator = m;
      break;
  }
  return d;
}

/// sum_{i=0}^{n-1} floor((a i + b) / mod), in O(log) steps.
inline BigInt floor_sum(BigInt n, BigInt mod, BigInt a, BigInt b) {
  BigInt total = 0;
  for (;;) {
    if (a >= mod) {
      total += (n - 1) * n / 2 * (a / mod);
      a %= mod;
    }
    if (b >= mod) {
      total += n * (b / mod);
      b %= mod;
    }
    const BigInt y_max = a * n + b;
    if (y_max < mod) break;
    n = y_max / mod;
    b = y_max % mod;
    std::swap(mod, a);
  }
  return total;
}

/// Number of w-bit words for which the floor method with multiplier
/// num/den returns an even value. Y = 1 + j is even exactly when j is odd,
/// and #odd j = sum j - 2 sum floor(j / 2).
inline BigInt floor_even_count(unsigned w, Multiplier mult) {
  mult.validate();
  const BigInt words = BigInt(1) << w;
  const BigInt scale = BigInt(mult.den) << w;
  return floor_sum(words, scale, mult.num, 0) - 2 * floor_sum(words, 2 * scale, mult.num, 0);
}

}  // namespace randaudit
