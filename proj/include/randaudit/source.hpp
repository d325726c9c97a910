#pragma once

// The randomness interface the sampling algorithms are written against, and
// its implementation over a word generator.

#include <cmath>
#include <concepts>
#include <cstdint>

#include "randaudit/bits.hpp"
#include "randaudit/generators.hpp"
#include "randaudit/integers.hpp"

namespace randaudit {

/// A uniform variate on (0, 1) that can be compared exactly with a
/// rational threshold: below(num, den) is true iff V < num / den.
template <class V>
concept UnitVariate = requires(V v, const BigInt& num, const BigInt& den) {
  { v.below(num, den) } -> std::same_as<bool>;
};

template <class S>
concept RandomSource = requires(S s, std::uint64_t m) {
  { s.draw(m) } -> std::same_as<std::uint64_t>;  // integer on {1..m}
  { s.key() } -> std::same_as<std::uint64_t>;    // raw sort key
  { s.unit_variate() } -> UnitVariate;
  { s.unit_double() } -> std::same_as<double>;   // in (0, 1)
  { s.integer_draws() } -> std::convertible_to<std::uint64_t>;
  { s.words_consumed() } -> std::convertible_to<std::uint64_t>;
  { s.bits_consumed() } -> std::convertible_to<std::uint64_t>;
};

/// Uniform real whose binary digits are pulled from the generator only as
/// far as a comparison needs them. V lies in [prefix / 2^len, (prefix+1) / 2^len).
template <WordGenerator G>
class LazyUniform {
 public:
  explicit LazyUniform(G& g) : pool_(g) {}

  bool below(const BigInt& num, const BigInt& den) {
    for (;;) {
      const BigInt scaled = num << len_;
      if (scaled >= (prefix_ + 1) * den) return true;
      if (scaled <= prefix_ * den) return false;
      prefix_ = (prefix_ << 1) | pool_.take(1);
      ++len_;
    }
  }

  unsigned bits_drawn() const { return len_; }

 private:
  BitPool<G> pool_;
  BigInt prefix_ = 0;
  unsigned len_ = 0;
};

/// RandomSource over a generator. Integer draws go through the chosen
/// integer method; mask-reject unless a caller opts into a biased one.
template <WordGenerator G>
class GeneratorSource {
 public:
  explicit GeneratorSource(G& g, IntegerMethod method = IntegerMethod::mask_reject)
      : g_(&g), method_(method), start_words_(g.words_emitted()) {}

  std::uint64_t draw(std::uint64_t m) {
    ++draws_;
    return randint(*g_, m, method_);
  }

  std::uint64_t key() { return g_->next_word(); }

  LazyUniform<G> unit_variate() { return LazyUniform<G>(*g_); }

  double unit_double() {
    const unsigned w = g_->word_width();
    return std::ldexp(static_cast<double>(g_->next_word()) + 0.5, -static_cast<int>(w));
  }

  std::uint64_t integer_draws() const { return draws_; }
  std::uint64_t words_consumed() const { return g_->words_emitted() - start_words_; }
  std::uint64_t bits_consumed() const { return words_consumed() * g_->word_width(); }
  IntegerMethod method() const { return method_; }
  G& generator() { return *g_; }

 private:
  G* g_;
  IntegerMethod method_;
  std::uint64_t start_words_;
  std::uint64_t draws_ = 0;
};

}  // namespace randaudit
