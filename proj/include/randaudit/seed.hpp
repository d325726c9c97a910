#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace randaudit {

class SeedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Seed material for any generator.
///
/// A seed is a byte string. Its human-readable form is the text itself when
/// every byte is printable ASCII (and the text does not start with "0x"),
/// otherwise "0x" followed by lowercase hex. `parse(human_readable())` always
/// returns the original bytes.
///
/// Fixed-register generators read the seed as an integer: a run of ASCII
/// decimal digits is parsed as decimal, a byte string shown in hex form of
/// at most eight bytes is read big-endian. Other text has no integer form.
class Seed {
 public:
  Seed() = default;

  static Seed from_text(std::string_view text) {
    Seed s;
    s.bytes_.assign(text.begin(), text.end());
    return s;
  }

  static Seed from_bytes(std::vector<std::uint8_t> bytes) {
    Seed s;
    s.bytes_ = std::move(bytes);
    return s;
  }

  static Seed from_integer(std::uint64_t value) { return from_text(std::to_string(value)); }

  static Seed from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    if (hex.empty() || hex.size() % 2 != 0) throw SeedError("hex seed needs an even, nonzero number of digits");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
      out.push_back(static_cast<std::uint8_t>(hex_digit(hex[i]) << 4 | hex_digit(hex[i + 1])));
    }
    return from_bytes(std::move(out));
  }

  /// Inverse of human_readable().
  static Seed parse(std::string_view human) {
    if (human.size() > 2 && human[0] == '0' && (human[1] == 'x' || human[1] == 'X')) return from_hex(human);
    return from_text(human);
  }

  /// Seed file: '#' comment lines and blank lines are ignored; exactly one
  /// remaining line holds the seed as hex ("0x...") or decimal digits.
  static Seed from_file_contents(std::string_view contents) {
    std::istringstream in{std::string(contents)};
    std::string line;
    std::optional<std::string> value;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto last = line.find_last_not_of(" \t\r");
      if (value) throw SeedError("seed file holds more than one seed line");
      value = line.substr(first, last - first + 1);
    }
    if (!value) throw SeedError("seed file holds no seed line");
    if (value->size() > 2 && (*value)[0] == '0' && ((*value)[1] == 'x' || (*value)[1] == 'X')) return from_hex(*value);
    for (char c : *value) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw SeedError("seed line must be hex or decimal: " + *value);
    }
    return from_text(*value);
  }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  bool empty() const { return bytes_.empty(); }
  std::string text() const { return {bytes_.begin(), bytes_.end()}; }

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (auto b : bytes_) {
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xF]);
    }
    return out;
  }

  std::string human_readable() const {
    bool printable = !(bytes_.size() > 2 && bytes_[0] == '0' && (bytes_[1] == 'x' || bytes_[1] == 'X'));
    for (auto b : bytes_) printable = printable && b >= 0x20 && b < 0x7F;
    return printable ? text() : "0x" + hex();
  }

  std::optional<std::uint64_t> as_integer() const {
    if (bytes_.empty()) return std::nullopt;
    bool decimal = true;
    for (auto b : bytes_) decimal = decimal && b >= '0' && b <= '9';
    std::uint64_t value = 0;
    if (decimal) {
      for (auto b : bytes_) {
        const std::uint64_t digit = b - '0';
        if (value > (UINT64_MAX - digit) / 10) return std::nullopt;
        value = value * 10 + digit;
      }
      return value;
    }
    if (bytes_.size() > 8 || human_readable() == text()) return std::nullopt;
    for (auto b : bytes_) value = value << 8 | b;
    return value;
  }

  friend bool operator==(const Seed&, const Seed&) = default;

 private:
  static std::uint8_t hex_digit(char c) {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw SeedError(std::string("invalid hex digit '") + c + "'");
  }

  std::vector<std::uint8_t> bytes_;
};

}  // namespace randaudit
