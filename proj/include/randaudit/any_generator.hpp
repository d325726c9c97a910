#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "randaudit/generators.hpp"
#include "randaudit/hash_prng.hpp"
#include "randaudit/seed.hpp"

namespace randaudit {

enum class GeneratorKind { lcg, wichmann_hill, mt19937, hash_counter, scripted };

inline std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::lcg: return "lcg";
    case GeneratorKind::wichmann_hill: return "wh";
    case GeneratorKind::mt19937: return "mt";
    case GeneratorKind::hash_counter: return "hash";
    case GeneratorKind::scripted: return "scripted";
  }
  return "?";
}

inline GeneratorKind parse_generator_kind(std::string_view s) {
  if (s == "lcg" || s == "randu") return GeneratorKind::lcg;
  if (s == "wh" || s == "wichmann-hill") return GeneratorKind::wichmann_hill;
  if (s == "mt" || s == "mt19937") return GeneratorKind::mt19937;
  if (s == "hash" || s == "sha256") return GeneratorKind::hash_counter;
  if (s == "scripted") return GeneratorKind::scripted;
  throw std::invalid_argument("unknown generator: " + std::string(s));
}

/// Type-erased generator over the closed set of variants.
///
/// An optional output width keeps only the top bits of every native word,
/// which turns any generator into a toy small-word source.
class Generator {
 public:
  using Variant = std::variant<Lcg, WichmannHill, Mt19937, HashCounter, ScriptedSource>;

  template <class G>
    requires std::is_constructible_v<Variant, G>
  Generator(G g) : v_(std::move(g)) {}  // NOLINT(google-explicit-constructor)

  std::uint64_t next_word() {
    const std::uint64_t w = std::visit([](auto& g) { return g.next_word(); }, v_);
    return output_width_ ? w >> (native_width() - *output_width_) : w;
  }

  unsigned word_width() const { return output_width_ ? *output_width_ : native_width(); }
  unsigned native_width() const {
    return std::visit([](const auto& g) { return g.word_width(); }, v_);
  }
  std::uint64_t words_emitted() const {
    return std::visit([](const auto& g) { return g.words_emitted(); }, v_);
  }

  void set_output_width(unsigned bits) {
    if (bits == 0 || bits > native_width()) throw std::invalid_argument("output width must be in [1, native width]");
    output_width_ = bits == native_width() ? std::nullopt : std::optional<unsigned>(bits);
  }

  GeneratorKind kind() const { return static_cast<GeneratorKind>(v_.index()); }
  const Variant& variant() const { return v_; }
  Variant& variant() { return v_; }

  std::string describe() const {
    std::string d = std::visit(
        [](const auto& g) -> std::string {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, Lcg>) {
            const auto& p = g.params();
            return "lcg(a=" + std::to_string(p.multiplier) + ",c=" + std::to_string(p.increment) +
                   ",m=" + std::to_string(p.modulus) + ")";
          } else if constexpr (std::is_same_v<T, WichmannHill>) {
            return "wichmann-hill";
          } else if constexpr (std::is_same_v<T, Mt19937>) {
            return "mt19937";
          } else if constexpr (std::is_same_v<T, HashCounter>) {
            return "hash-counter(" + to_string(g.algorithm()) + ")";
          } else {
            return "scripted(width=" + std::to_string(g.word_width()) + ")";
          }
        },
        v_);
    if (output_width_) d += "[top " + std::to_string(*output_width_) + " bits]";
    return d;
  }

 private:
  Variant v_;
  std::optional<unsigned> output_width_;
};

static_assert(WordGenerator<Generator>);

/// Deterministic construction from a seed.
///
/// lcg: the seed integer is the initial register and must be < m.
/// wichmann_hill: the seed integer is split into the three registers
/// (WichmannHill::from_integer). mt19937: the seed integer must fit in 32
/// bits. hash_counter: the seed bytes are S verbatim and i starts at 0.
inline Generator seed_generator(GeneratorKind kind, const Seed& seed, std::optional<LcgParams> lcg = std::nullopt,
                                HashAlgorithm hash = HashAlgorithm::sha256) {
  auto integer = [&]() {
    const auto v = seed.as_integer();
    if (!v) throw SeedError("seed '" + seed.human_readable() + "' is not an integer for " + to_string(kind));
    return *v;
  };
  switch (kind) {
    case GeneratorKind::lcg:
      return Lcg(lcg.value_or(kRandu), integer());
    case GeneratorKind::wichmann_hill:
      return WichmannHill::from_integer(integer());
    case GeneratorKind::mt19937: {
      const auto v = integer();
      if (v > UINT32_MAX) throw SeedError("MT19937 seed must fit in 32 bits");
      return Mt19937(static_cast<std::uint32_t>(v));
    }
    case GeneratorKind::hash_counter:
      return HashCounter(seed, hash);
    case GeneratorKind::scripted:
      break;
  }
  throw std::invalid_argument("scripted sources are built from a script, not a seed");
}

}  // namespace randaudit
