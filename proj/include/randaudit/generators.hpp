#pragma once

// Deterministic word generators: linear congruential, Wichmann-Hill,
// MT19937 and a scripted source for tests. The hash-counter generator lives
// in hash_prng.hpp.

#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "randaudit/seed.hpp"

namespace randaudit {

/// Anything that emits fixed-width unsigned words.
template <class G>
concept WordGenerator = requires(G g, const G cg) {
  { g.next_word() } -> std::same_as<std::uint64_t>;
  { cg.word_width() } -> std::convertible_to<unsigned>;
  { cg.words_emitted() } -> std::convertible_to<std::uint64_t>;
};

class SourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// X' = (a X + c) mod m.
struct LcgParams {
  std::uint64_t modulus = 0;
  std::uint64_t multiplier = 0;
  std::uint64_t increment = 0;

  void validate() const {
    if (modulus < 2) throw std::invalid_argument("LCG modulus must be at least 2");
    if (multiplier == 0 || multiplier >= modulus) throw std::invalid_argument("LCG multiplier must satisfy 0 < a < m");
    if (increment >= modulus) throw std::invalid_argument("LCG increment must satisfy 0 <= c < m");
  }

  friend bool operator==(const LcgParams&, const LcgParams&) = default;
};

inline constexpr LcgParams kRandu{2147483648ULL, 65539, 0};

/// Hull-Dobell: the LCG has period m from every seed iff gcd(c, m) = 1,
/// every prime factor of m divides a - 1, and 4 | a - 1 whenever 4 | m.
inline bool full_period(const LcgParams& p) {
  p.validate();
  if (std::gcd(p.increment, p.modulus) != 1) return false;
  const std::uint64_t a1 = p.multiplier - 1;
  if (p.modulus % 4 == 0 && a1 % 4 != 0) return false;
  // Strip from m every prime it shares with a - 1; what survives has a
  // prime factor that a - 1 lacks.
  std::uint64_t rest = p.modulus;
  while (rest > 1) {
    const std::uint64_t g = std::gcd(rest, a1);
    if (g == 1) break;
    rest /= g;
  }
  return rest == 1;
}

class Lcg {
 public:
  Lcg(LcgParams params, std::uint64_t seed) : params_(params), state_(seed) {
    params_.validate();
    if (seed >= params_.modulus) {
      throw SeedError("LCG seed " + std::to_string(seed) + " outside [0, " + std::to_string(params_.modulus) + ")");
    }
  }

  std::uint64_t next_word() {
    const unsigned __int128 next =
        static_cast<unsigned __int128>(params_.multiplier) * state_ + params_.increment;
    state_ = static_cast<std::uint64_t>(next % params_.modulus);
    ++emitted_;
    return state_;
  }

  /// Words are the full register, so the width is the bit length of m - 1.
  unsigned word_width() const { return static_cast<unsigned>(std::bit_width(params_.modulus - 1)); }
  std::uint64_t words_emitted() const { return emitted_; }
  std::uint64_t state() const { return state_; }
  const LcgParams& params() const { return params_; }

  friend bool operator==(const Lcg&, const Lcg&) = default;

 private:
  LcgParams params_;
  std::uint64_t state_;
  std::uint64_t emitted_ = 0;
};

/// Sum of three normalized LCGs, using the original 1982 constants.
///
/// next_fraction() returns the native output in [0, 1). next_word() returns
/// floor(u * 2^32) computed exactly from the registers; it is a lossy
/// 32-bit discretization of the same output.
class WichmannHill {
 public:
  static constexpr std::array<std::uint32_t, 3> kModuli{30269, 30307, 30323};
  static constexpr std::array<std::uint32_t, 3> kMultipliers{171, 172, 170};

  WichmannHill(std::uint32_t s1, std::uint32_t s2, std::uint32_t s3) : s_{s1, s2, s3} {
    for (int i = 0; i < 3; ++i) {
      if (s_[i] == 0 || s_[i] >= kModuli[i]) {
        throw SeedError("Wichmann-Hill register " + std::to_string(i + 1) + " must lie in [1, " +
                        std::to_string(kModuli[i] - 1) + "]");
      }
    }
  }

  /// Integer seed s maps bijectively onto register triples: the three
  /// mixed-radix digits of s, each shifted up by one.
  static WichmannHill from_integer(std::uint64_t s) {
    const std::uint64_t r1 = kModuli[0] - 1, r2 = kModuli[1] - 1, r3 = kModuli[2] - 1;
    if (s >= r1 * r2 * r3) throw SeedError("Wichmann-Hill integer seed exceeds the register space");
    return WichmannHill(static_cast<std::uint32_t>(1 + s % r1), static_cast<std::uint32_t>(1 + (s / r1) % r2),
                        static_cast<std::uint32_t>(1 + (s / (r1 * r2)) % r3));
  }

  double next_fraction() {
    const auto [num, den] = advance();
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::uint64_t next_word() {
    const auto [num, den] = advance();
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) << 32) / den);
  }

  unsigned word_width() const { return 32; }
  std::uint64_t words_emitted() const { return emitted_; }
  const std::array<std::uint32_t, 3>& registers() const { return s_; }

  friend bool operator==(const WichmannHill&, const WichmannHill&) = default;

 private:
  // Output as the exact fraction num / (m1 m2 m3).
  std::pair<std::uint64_t, std::uint64_t> advance() {
    for (int i = 0; i < 3; ++i) s_[i] = s_[i] * kMultipliers[i] % kModuli[i];
    ++emitted_;
    const std::uint64_t m1 = kModuli[0], m2 = kModuli[1], m3 = kModuli[2];
    const std::uint64_t den = m1 * m2 * m3;
    const std::uint64_t num = (s_[0] * m2 * m3 + s_[1] * m1 * m3 + s_[2] * m1 * m2) % den;
    return {num, den};
  }

  std::array<std::uint32_t, 3> s_;
  std::uint64_t emitted_ = 0;
};

/// MT19937 with the 2002 initialization (init_genrand).
class Mt19937 {
 public:
  static constexpr int kN = 624;
  static constexpr int kM = 397;

  explicit Mt19937(std::uint32_t seed = 5489U) {
    mt_[0] = seed;
    for (int i = 1; i < kN; ++i) {
      mt_[i] = 1812433253U * (mt_[i - 1] ^ (mt_[i - 1] >> 30)) + static_cast<std::uint32_t>(i);
    }
    index_ = kN;
  }

  std::uint64_t next_word() {
    if (index_ >= kN) twist();
    std::uint32_t y = mt_[index_++];
    y ^= y >> 11;
    y ^= (y << 7) & 0x9d2c5680U;
    y ^= (y << 15) & 0xefc60000U;
    y ^= y >> 18;
    ++emitted_;
    return y;
  }

  unsigned word_width() const { return 32; }
  std::uint64_t words_emitted() const { return emitted_; }
  int index() const { return index_; }

  friend bool operator==(const Mt19937&, const Mt19937&) = default;

 private:
  static constexpr std::uint32_t kMatrixA = 0x9908b0dfU;
  static constexpr std::uint32_t kUpper = 0x80000000U;
  static constexpr std::uint32_t kLower = 0x7fffffffU;

  void twist() {
    for (int i = 0; i < kN; ++i) {
      const std::uint32_t y = (mt_[i] & kUpper) | (mt_[(i + 1) % kN] & kLower);
      mt_[i] = mt_[(i + kM) % kN] ^ (y >> 1) ^ ((y & 1U) ? kMatrixA : 0U);
    }
    index_ = 0;
  }

  std::array<std::uint32_t, kN> mt_{};
  int index_ = kN;
  std::uint64_t emitted_ = 0;
};

class ScriptFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Replays a fixed list of words, then throws SourceExhausted.
class ScriptedSource {
 public:
  ScriptedSource(unsigned width, std::vector<std::uint64_t> words) : width_(width), words_(std::move(words)) {
    if (width_ == 0 || width_ > 64) throw ScriptFormatError("scripted word width must be in [1, 64]");
    for (auto w : words_) {
      if (width_ < 64 && (w >> width_) != 0) {
        throw ScriptFormatError("scripted word " + std::to_string(w) + " exceeds width " + std::to_string(width_));
      }
    }
  }

  /// Format: a header line "width=<w>", then one unsigned decimal word per
  /// line. Blank lines are ignored.
  static ScriptedSource parse(std::istream& in) {
    std::string line;
    std::optional<unsigned> width;
    std::vector<std::uint64_t> words;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      if (!width) {
        if (line.rfind("width=", 0) != 0) throw ScriptFormatError("scripted source must start with width=<w>");
        width = parse_uint(line.substr(6));
        continue;
      }
      words.push_back(parse_uint(line));
    }
    if (!width) throw ScriptFormatError("scripted source is missing its width=<w> header");
    if (*width > 64) throw ScriptFormatError("scripted word width must be in [1, 64]");
    return {*width, std::move(words)};
  }

  std::uint64_t next_word() {
    if (pos_ >= words_.size()) {
      throw SourceExhausted("scripted source exhausted after " + std::to_string(words_.size()) + " words");
    }
    return words_[pos_++];
  }

  unsigned word_width() const { return width_; }
  std::uint64_t words_emitted() const { return pos_; }
  std::size_t remaining() const { return words_.size() - pos_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const ScriptedSource&, const ScriptedSource&) = default;

 private:
  static std::uint64_t parse_uint(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw ScriptFormatError("empty number");
    const std::string body = s.substr(first, last - first + 1);
    std::uint64_t v = 0;
    for (char c : body) {
      if (c < '0' || c > '9') throw ScriptFormatError("not an unsigned decimal: " + body);
      const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
      if (v > (UINT64_MAX - d) / 10) throw ScriptFormatError("value overflows 64 bits: " + body);
      v = v * 10 + d;
    }
    return v;
  }

  unsigned width_;
  std::vector<std::uint64_t> words_;
  std::size_t pos_ = 0;
};

}  // namespace randaudit
