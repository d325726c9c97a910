#pragma once

#include <algorithm>
#include <cstdint>

#include "randaudit/generators.hpp"

namespace randaudit {

inline constexpr std::uint64_t low_mask(unsigned bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

/// Hands out bits from a generator's words, most significant first. Bits
/// left over in a word stay in the pool until the pool is destroyed.
template <WordGenerator G>
class BitPool {
 public:
  explicit BitPool(G& g) : g_(&g), width_(g.word_width()) {}

  std::uint64_t take(unsigned n) {
    std::uint64_t out = 0;
    while (n > 0) {
      if (left_ == 0) {
        buf_ = g_->next_word();
        left_ = width_;
      }
      const unsigned t = std::min(n, left_);
      const std::uint64_t chunk = (buf_ >> (left_ - t)) & low_mask(t);
      out = t >= 64 ? chunk : (out << t) | chunk;
      left_ -= t;
      n -= t;
      taken_ += t;
    }
    return out;
  }

  std::uint64_t bits_taken() const { return taken_; }

 private:
  G* g_;
  unsigned width_;
  std::uint64_t buf_ = 0;
  unsigned left_ = 0;
  std::uint64_t taken_ = 0;
};

}  // namespace randaudit
