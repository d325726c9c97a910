#pragma once

// Hash-counter CS-PRNG. The state is the seed string S and a counter i; the
// i-th digest is H(S || "," || decimal(i)). Each 256-bit digest is consumed
// as eight 32-bit words, most significant first, after which i advances.

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "randaudit/seed.hpp"

namespace randaudit {

enum class HashAlgorithm { sha256, sha3_256, blake2s_256 };

inline std::string to_string(HashAlgorithm h) {
  switch (h) {
    case HashAlgorithm::sha256: return "sha256";
    case HashAlgorithm::sha3_256: return "sha3-256";
    case HashAlgorithm::blake2s_256: return "blake2s256";
  }
  return "?";
}

inline HashAlgorithm parse_hash_algorithm(std::string_view name) {
  if (name == "sha256") return HashAlgorithm::sha256;
  if (name == "sha3-256") return HashAlgorithm::sha3_256;
  if (name == "blake2s256") return HashAlgorithm::blake2s_256;
  throw std::invalid_argument("unknown hash algorithm: " + std::string(name));
}

using Digest = std::array<std::uint8_t, 32>;

inline Digest hash_bytes(HashAlgorithm alg, const std::uint8_t* data, std::size_t size) {
  const EVP_MD* md = nullptr;
  switch (alg) {
    case HashAlgorithm::sha256: md = EVP_sha256(); break;
    case HashAlgorithm::sha3_256: md = EVP_sha3_256(); break;
    case HashAlgorithm::blake2s_256: md = EVP_blake2s256(); break;
  }
  Digest out{};
  unsigned int len = 0;
  if (md == nullptr || EVP_Digest(data, size, out.data(), &len, md, nullptr) != 1 || len != out.size()) {
    throw std::runtime_error("digest computation failed for " + to_string(alg));
  }
  return out;
}

/// The message hashed for counter i: S, one ASCII comma, decimal i.
inline std::vector<std::uint8_t> hash_prng_message(const std::vector<std::uint8_t>& seed, std::uint64_t counter) {
  std::vector<std::uint8_t> msg(seed);
  msg.push_back(',');
  for (char c : std::to_string(counter)) msg.push_back(static_cast<std::uint8_t>(c));
  return msg;
}

inline Digest hash_prng_output(const std::vector<std::uint8_t>& seed, std::uint64_t counter,
                               HashAlgorithm alg = HashAlgorithm::sha256) {
  const auto msg = hash_prng_message(seed, counter);
  return hash_bytes(alg, msg.data(), msg.size());
}

class HashCounter {
 public:
  static constexpr unsigned kWordsPerDigest = 8;

  explicit HashCounter(Seed seed, HashAlgorithm alg = HashAlgorithm::sha256) : seed_(std::move(seed)), alg_(alg) {
    if (seed_.empty()) throw SeedError("hash-counter generator needs a nonempty seed string");
  }

  std::uint64_t next_word() {
    if (offset_ == kWordsPerDigest) {
      ++counter_;
      offset_ = 0;
    }
    if (!cached_) {
      digest_ = hash_prng_output(seed_.bytes(), counter_, alg_);
      cached_ = true;
    }
    const auto* p = digest_.data() + 4 * offset_;
    ++offset_;
    if (offset_ == kWordsPerDigest) cached_ = false;
    ++emitted_;
    return std::uint64_t{p[0]} << 24 | std::uint64_t{p[1]} << 16 | std::uint64_t{p[2]} << 8 | p[3];
  }

  unsigned word_width() const { return 32; }
  std::uint64_t words_emitted() const { return emitted_; }
  /// Index of the digest currently being consumed.
  std::uint64_t counter() const { return counter_; }
  /// Words already taken from the current digest, in [0, 8].
  unsigned offset() const { return offset_; }
  const Seed& seed() const { return seed_; }
  HashAlgorithm algorithm() const { return alg_; }

  friend bool operator==(const HashCounter& a, const HashCounter& b) {
    return a.seed_ == b.seed_ && a.alg_ == b.alg_ && a.counter_ == b.counter_ && a.offset_ == b.offset_ &&
           a.emitted_ == b.emitted_;
  }

 private:
  Seed seed_;
  HashAlgorithm alg_;
  std::uint64_t counter_ = 0;
  unsigned offset_ = 0;
  std::uint64_t emitted_ = 0;
  Digest digest_{};
  bool cached_ = false;
};

}  // namespace randaudit
