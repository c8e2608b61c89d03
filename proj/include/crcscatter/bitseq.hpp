#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crcscatter {

// Bit sequence of arbitrary length, not necessarily a whole number of bytes.
// Transmission order is index order: bit 0 goes on the air first. Within a
// byte the most significant bit comes first, and when a sequence maps to a
// CRC register word, bit 0 is the most significant register bit.
class BitSeq {
 public:
  BitSeq() = default;
  explicit BitSeq(std::vector<std::uint8_t> bits);

  static BitSeq zeros(std::size_t n);
  static BitSeq from_bytes(std::span<const std::uint8_t> bytes);
  static BitSeq from_word(std::uint32_t value, unsigned width);
  static BitSeq from_bit_string(std::string_view text);  // "0100..."
  static BitSeq from_hex(std::string_view text);         // "0xA5" or "A5"
  static BitSeq random(std::size_t n, std::mt19937_64& rng);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

  void set(std::size_t i, std::uint8_t bit);
  void push_back(std::uint8_t bit);
  void append(const BitSeq& other);
  BitSeq slice(std::size_t pos, std::size_t len) const;

  // size() must equal width; bit 0 lands in the register MSB.
  std::uint32_t to_word(unsigned width) const;
  std::vector<std::uint8_t> to_bytes() const;  // size() % 8 == 0
  std::string to_bit_string() const;
  std::string to_hex() const;  // size() % 4 == 0, no 0x prefix

  std::size_t hamming_distance(const BitSeq& other) const;

  bool operator==(const BitSeq&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Lengths must match.
BitSeq operator^(const BitSeq& a, const BitSeq& b);

}  // namespace crcscatter
