#include <gtest/gtest.h>

#include <bit>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "randaudit/any_generator.hpp"
#include "randaudit/generators.hpp"
#include "randaudit/hash_prng.hpp"
#include "randaudit/seed.hpp"

using namespace randaudit;

// --- seeds ------------------------------------------------------------------

TEST(Seed, TextRoundTrip) {
  const Seed s = Seed::from_text("dice 3141592653");
  EXPECT_EQ(s.human_readable(), "dice 3141592653");
  EXPECT_EQ(Seed::parse(s.human_readable()), s);
}

TEST(Seed, BinaryRoundTripsThroughHex) {
  const Seed s = Seed::from_bytes({0x00, 0xff, 0x10, 0x0a});
  EXPECT_EQ(s.human_readable(), "0x00ff100a");
  EXPECT_EQ(Seed::parse(s.human_readable()), s);
}

TEST(Seed, TextThatLooksLikeHexIsEscaped) {
  const Seed s = Seed::from_text("0xabc");
  EXPECT_NE(s.human_readable(), "0xabc");
  EXPECT_EQ(Seed::parse(s.human_readable()), s);
}

TEST(Seed, IntegerForms) {
  EXPECT_EQ(Seed::from_integer(5489).as_integer(), 5489U);
  EXPECT_EQ(Seed::from_hex("0x0102").as_integer(), 0x0102U);
  EXPECT_FALSE(Seed::from_text("abc").as_integer().has_value());
}

TEST(Seed, FileContents) {
  EXPECT_EQ(Seed::from_file_contents("# rolled on 2024-01-02\n\n  123456  \n"), Seed::from_text("123456"));
  EXPECT_EQ(Seed::from_file_contents("0xdeadbeef\n").as_integer(), 0xdeadbeefU);
  EXPECT_THROW(Seed::from_file_contents("# nothing\n"), SeedError);
  EXPECT_THROW(Seed::from_file_contents("1\n2\n"), SeedError);
  EXPECT_THROW(Seed::from_hex("0xabc"), SeedError);
}

// --- LCG --------------------------------------------------------------------

TEST(Lcg, RanduTrace) {
  Lcg g(kRandu, 1);
  EXPECT_EQ(g.state(), 1U);
  EXPECT_EQ(g.next_word(), 65539U);
  EXPECT_EQ(g.next_word(), 393225U);
  EXPECT_EQ(g.words_emitted(), 2U);
  EXPECT_EQ(g.word_width(), 31U);
}

TEST(Lcg, RanduSecondStepMatchesDirectProduct) {
  // 65539^2 = 4295360521, reduced mod 2^31.
  EXPECT_EQ(4295360521ULL % 2147483648ULL, 393225ULL);
}

TEST(Lcg, RejectsBadParametersAndSeeds) {
  EXPECT_THROW(Lcg(LcgParams{1, 1, 0}, 0), std::invalid_argument);
  EXPECT_THROW(Lcg(LcgParams{16, 0, 1}, 0), std::invalid_argument);
  EXPECT_THROW(Lcg(LcgParams{16, 5, 16}, 0), std::invalid_argument);
  EXPECT_THROW(Lcg(LcgParams{256, 5, 1}, 256), SeedError);
}

TEST(Lcg, FullPeriodExamples) {
  EXPECT_TRUE(full_period({256, 5, 1}));
  EXPECT_FALSE(full_period(kRandu));
  EXPECT_TRUE(full_period({2, 1, 1}));
  EXPECT_FALSE(full_period({256, 3, 1}));   // 4 | m but 4 does not divide a - 1
  EXPECT_TRUE(full_period({9, 4, 2}));      // 3 | a - 1
  EXPECT_FALSE(full_period({9, 4, 3}));     // gcd(c, m) = 3
}

namespace {

std::uint64_t orbit_length(const LcgParams& p, std::uint64_t start) {
  Lcg g(p, start);
  std::uint64_t steps = 0;
  do {
    g.next_word();
    ++steps;
  } while (g.state() != start && steps <= p.modulus);
  return steps;
}

}  // namespace

// Predicate against brute-force orbits for every small parameter set.
TEST(Lcg, FullPeriodAgreesWithOrbitEnumeration) {
  for (std::uint64_t m = 2; m <= 40; ++m) {
    for (std::uint64_t a = 1; a < m; ++a) {
      for (std::uint64_t c = 0; c < m; ++c) {
        const LcgParams p{m, a, c};
        EXPECT_EQ(full_period(p), orbit_length(p, 0) == m) << "a=" << a << " c=" << c << " m=" << m;
      }
    }
  }
}

TEST(Lcg, FullPeriodOrbitVisitsEveryResidue) {
  const std::vector<LcgParams> params{{256, 5, 1}, {65536, 4005, 12345}, {1000, 21, 7}, {60000, 61, 7}};
  for (const auto& p : params) {
    ASSERT_TRUE(full_period(p));
    Lcg g(p, 17 % p.modulus);
    std::vector<bool> seen(p.modulus, false);
    for (std::uint64_t i = 0; i < p.modulus; ++i) {
      const auto x = g.next_word();
      EXPECT_FALSE(seen[x]);
      seen[x] = true;
    }
    EXPECT_EQ(g.state(), 17 % p.modulus);
  }
}

// --- Wichmann-Hill ----------------------------------------------------------

TEST(WichmannHill, FirstStepFromOnes) {
  WichmannHill g(1, 1, 1);
  EXPECT_NEAR(g.next_fraction(), 0.0169309, 5e-8);
  EXPECT_EQ(g.registers(), (std::array<std::uint32_t, 3>{171, 172, 170}));
}

TEST(WichmannHill, WordIsExactDiscretization) {
  WichmannHill a(12, 345, 6789), b(12, 345, 6789);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.next_fraction();
    const std::uint64_t w = b.next_word();
    EXPECT_LE(static_cast<double>(w) / 4294967296.0, u);
    EXPECT_GT(static_cast<double>(w + 1) / 4294967296.0, u);
  }
}

TEST(WichmannHill, IntegerSeedIsBijective) {
  std::set<std::array<std::uint32_t, 3>> seen;
  for (std::uint64_t s = 0; s < 5000; ++s) seen.insert(WichmannHill::from_integer(s * 104729).registers());
  EXPECT_EQ(seen.size(), 5000U);
  EXPECT_EQ(WichmannHill::from_integer(0).registers(), (std::array<std::uint32_t, 3>{1, 1, 1}));
  EXPECT_THROW(WichmannHill::from_integer(30268ULL * 30306ULL * 30322ULL), SeedError);
  EXPECT_THROW(WichmannHill(0, 1, 1), SeedError);
  EXPECT_THROW(WichmannHill(1, 30307, 1), SeedError);
}

// --- MT19937 ----------------------------------------------------------------

TEST(Mt19937, FirstWordFromDefaultSeed) {
  Mt19937 g(5489);
  EXPECT_EQ(g.next_word(), 3499211612U);
}

TEST(Mt19937, MatchesStandardLibraryFor10000Words) {
  Mt19937 g(5489);
  std::mt19937 oracle(5489);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(g.next_word(), oracle()) << "word " << i;
}

TEST(Mt19937, MatchesStandardLibraryForOtherSeeds) {
  for (std::uint32_t seed : {0U, 1U, 42U, 4294967295U}) {
    Mt19937 g(seed);
    std::mt19937 oracle(seed);
    for (int i = 0; i < 2000; ++i) ASSERT_EQ(g.next_word(), oracle());
  }
}

// --- hash counter -----------------------------------------------------------

TEST(HashCounter, DigestMatchesReferenceSha256) {
  // sha256("abc,0") from an independent implementation (Python hashlib).
  const Digest d = hash_prng_output(Seed::from_text("abc").bytes(), 0);
  std::ostringstream hex;
  for (auto b : d) hex << std::hex << std::setw(2) << std::setfill('0') << int{b};
  EXPECT_EQ(hex.str(), "576c53c303aa5e09193629584fff80bd642f083700fc1f918fcba8d3b121e434");
}

TEST(HashCounter, AlternativeHashesMatchReference) {
  auto hex_of = [](const Digest& d) {
    std::ostringstream hex;
    for (auto b : d) hex << std::hex << std::setw(2) << std::setfill('0') << int{b};
    return hex.str();
  };
  const auto bytes = Seed::from_text("abc").bytes();
  EXPECT_EQ(hex_of(hash_prng_output(bytes, 0, HashAlgorithm::sha3_256)),
            "88074d2a4a73702be8fa2f71db5c1456677e68d2dd0fb33467093d9d2d15f6a1");
  EXPECT_EQ(hex_of(hash_prng_output(bytes, 0, HashAlgorithm::blake2s_256)),
            "77713c1134e1991375621e6b9f7d0904d80d32aa9ca20dc3670fd50140736310");
}

TEST(HashCounter, WordsAreDigestChunksMostSignificantFirst) {
  HashCounter g(Seed::from_text("abc"));
  EXPECT_EQ(g.counter(), 0U);
  EXPECT_EQ(g.words_emitted(), 0U);
  const std::uint64_t expected[] = {1466717123, 61496841, 422979928, 1342144701,
                                    1680803895, 16523153, 2412488915, 2971788340};
  for (auto e : expected) EXPECT_EQ(g.next_word(), e);
  EXPECT_EQ(g.counter(), 0U);
  EXPECT_EQ(g.next_word(), 2162625386U);  // first word of sha256("abc,1")
  EXPECT_EQ(g.counter(), 1U);
}

TEST(HashCounter, MessageEncoding) {
  const auto msg = hash_prng_message(Seed::from_text("S").bytes(), 1234);
  EXPECT_EQ(std::string(msg.begin(), msg.end()), "S,1234");
}

TEST(HashCounter, OutputIsIndependentOfQueryOrder) {
  const auto s = Seed::from_text("order").bytes();
  const auto d5 = hash_prng_output(s, 5);
  const auto d0 = hash_prng_output(s, 0);
  EXPECT_EQ(hash_prng_output(s, 0), d0);
  EXPECT_EQ(hash_prng_output(s, 5), d5);
}

TEST(HashCounter, EmptySeedRejected) { EXPECT_THROW(HashCounter(Seed::from_text("")), SeedError); }

TEST(HashCounter, AvalancheBetweenConsecutiveCounters) {
  std::mt19937_64 rng(2024);
  const int trials = 2000;
  double total = 0;
  for (int t = 0; t < trials; ++t) {
    const Seed s = Seed::from_integer(rng());
    const auto a = hash_prng_output(s.bytes(), 0);
    const auto b = hash_prng_output(s.bytes(), 1);
    int diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
    total += diff;
  }
  EXPECT_NEAR(total / trials, 128.0, 5.0);
}

// --- scripted source --------------------------------------------------------

TEST(ScriptedSource, ReplaysThenThrows) {
  ScriptedSource s(4, {3, 15, 0});
  EXPECT_EQ(s.next_word(), 3U);
  EXPECT_EQ(s.next_word(), 15U);
  EXPECT_EQ(s.next_word(), 0U);
  EXPECT_THROW(s.next_word(), SourceExhausted);
}

TEST(ScriptedSource, ParsesFileFormat) {
  std::istringstream in("width=3\n\n7\n 1 \r\n0\n");
  auto s = ScriptedSource::parse(in);
  EXPECT_EQ(s.word_width(), 3U);
  EXPECT_EQ(s.words(), (std::vector<std::uint64_t>{7, 1, 0}));
}

TEST(ScriptedSource, RejectsMalformedInput) {
  std::istringstream no_header("5\n");
  EXPECT_THROW(ScriptedSource::parse(no_header), ScriptFormatError);
  std::istringstream too_wide("width=2\n4\n");
  EXPECT_THROW(ScriptedSource::parse(too_wide), ScriptFormatError);
  std::istringstream junk("width=8\n12x\n");
  EXPECT_THROW(ScriptedSource::parse(junk), ScriptFormatError);
}

// --- determinism through the common interface -------------------------------

TEST(Generator, EqualSeedsGiveEqualStreams) {
  for (auto kind : {GeneratorKind::lcg, GeneratorKind::wichmann_hill, GeneratorKind::mt19937,
                    GeneratorKind::hash_counter}) {
    Generator a = seed_generator(kind, Seed::from_integer(20240101));
    Generator b = seed_generator(kind, Seed::from_integer(20240101));
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next_word(), b.next_word()) << to_string(kind);
    EXPECT_EQ(a.words_emitted(), 10000U);
  }
}

TEST(Generator, SeedingContracts) {
  Generator h = seed_generator(GeneratorKind::hash_counter, Seed::from_text("abc"));
  EXPECT_EQ(std::get<HashCounter>(h.variant()).counter(), 0U);
  EXPECT_EQ(h.words_emitted(), 0U);
  Generator l = seed_generator(GeneratorKind::lcg, Seed::from_integer(1));
  EXPECT_EQ(std::get<Lcg>(l.variant()).state(), 1U);
  Generator m = seed_generator(GeneratorKind::mt19937, Seed::from_integer(5489));
  EXPECT_EQ(m.next_word(), 3499211612U);
  EXPECT_THROW(seed_generator(GeneratorKind::mt19937, Seed::from_integer(1ULL << 32)), SeedError);
  EXPECT_THROW(seed_generator(GeneratorKind::lcg, Seed::from_text("abc")), SeedError);
}

TEST(Generator, OutputWidthKeepsTopBits) {
  Generator a = seed_generator(GeneratorKind::mt19937, Seed::from_integer(5489));
  a.set_output_width(8);
  EXPECT_EQ(a.word_width(), 8U);
  EXPECT_EQ(a.next_word(), 3499211612U >> 24);
  EXPECT_THROW(a.set_output_width(33), std::invalid_argument);
}

TEST(Generator, KindNames) {
  for (auto kind : {GeneratorKind::lcg, GeneratorKind::wichmann_hill, GeneratorKind::mt19937,
                    GeneratorKind::hash_counter, GeneratorKind::scripted}) {
    EXPECT_EQ(parse_generator_kind(to_string(kind)), kind);
  }
  EXPECT_EQ(parse_generator_kind("randu"), GeneratorKind::lcg);
  EXPECT_THROW(parse_generator_kind("kiss"), std::invalid_argument);
}
