#include "crcscatter/bitseq.hpp"

#include <stdexcept>

namespace crcscatter {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitSeq::BitSeq(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("BitSeq: bit values must be 0 or 1");
  }
}

BitSeq BitSeq::zeros(std::size_t n) {
  BitSeq s;
  s.bits_.assign(n, 0);
  return s;
}

BitSeq BitSeq::from_bytes(std::span<const std::uint8_t> bytes) {
  BitSeq s;
  s.bits_.reserve(bytes.size() * 8);
  for (auto byte : bytes) {
    for (int i = 7; i >= 0; --i) s.bits_.push_back((byte >> i) & 1u);
  }
  return s;
}

BitSeq BitSeq::from_word(std::uint32_t value, unsigned width) {
  if (width == 0 || width > 32) throw std::invalid_argument("BitSeq: width must be 1..32");
  if (width < 32 && (value >> width) != 0) {
    throw std::invalid_argument("BitSeq: word value does not fit the width");
  }
  BitSeq s;
  s.bits_.reserve(width);
  for (unsigned i = 0; i < width; ++i) {
    s.bits_.push_back((value >> (width - 1 - i)) & 1u);
  }
  return s;
}

BitSeq BitSeq::from_bit_string(std::string_view text) {
  BitSeq s;
  s.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitSeq: bit string may contain only 0 and 1");
    s.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return s;
}

BitSeq BitSeq::from_hex(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  if (text.empty()) throw std::invalid_argument("BitSeq: empty hex string");
  BitSeq s;
  s.bits_.reserve(text.size() * 4);
  for (char c : text) {
    int v = hex_digit(c);
    if (v < 0) throw std::invalid_argument("BitSeq: invalid hex digit");
    for (int i = 3; i >= 0; --i) s.bits_.push_back((v >> i) & 1u);
  }
  return s;
}

BitSeq BitSeq::random(std::size_t n, std::mt19937_64& rng) {
  BitSeq s;
  s.bits_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.bits_.push_back(static_cast<std::uint8_t>(rng() & 1u));
  return s;
}

void BitSeq::set(std::size_t i, std::uint8_t bit) {
  if (i >= bits_.size()) throw std::out_of_range("BitSeq: index out of range");
  if (bit > 1) throw std::invalid_argument("BitSeq: bit values must be 0 or 1");
  bits_[i] = bit;
}

void BitSeq::push_back(std::uint8_t bit) {
  if (bit > 1) throw std::invalid_argument("BitSeq: bit values must be 0 or 1");
  bits_.push_back(bit);
}

void BitSeq::append(const BitSeq& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitSeq BitSeq::slice(std::size_t pos, std::size_t len) const {
  if (pos > bits_.size() || len > bits_.size() - pos) {
    throw std::out_of_range("BitSeq: slice out of range");
  }
  BitSeq s;
  s.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + len);
  return s;
}

std::uint32_t BitSeq::to_word(unsigned width) const {
  if (width == 0 || width > 32) throw std::invalid_argument("BitSeq: width must be 1..32");
  if (bits_.size() != width) throw std::invalid_argument("BitSeq: to_word requires size() == width");
  std::uint32_t v = 0;
  for (unsigned i = 0; i < width; ++i) {
    v = (v << 1) | bits_[i];
  }
  return v;
}

std::vector<std::uint8_t> BitSeq::to_bytes() const {
  if (bits_.size() % 8 != 0) throw std::invalid_argument("BitSeq: to_bytes requires a multiple of 8 bits");
  std::vector<std::uint8_t> out(bits_.size() / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    out[i / 8] = static_cast<std::uint8_t>((out[i / 8] << 1) | bits_[i]);
  }
  return out;
}

std::string BitSeq::to_bit_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
  return out;
}

std::string BitSeq::to_hex() const {
  if (bits_.size() % 4 != 0) throw std::invalid_argument("BitSeq: to_hex requires a multiple of 4 bits");
  static const char digits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(bits_.size() / 4);
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    int v = (bits_[i] << 3) | (bits_[i + 1] << 2) | (bits_[i + 2] << 1) | bits_[i + 3];
    out.push_back(digits[v]);
  }
  return out;
}

std::size_t BitSeq::hamming_distance(const BitSeq& other) const {
  if (bits_.size() != other.bits_.size()) {
    throw std::invalid_argument("BitSeq: hamming_distance requires equal lengths");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) d += bits_[i] ^ other.bits_[i];
  return d;
}

BitSeq operator^(const BitSeq& a, const BitSeq& b) {
  if (a.size() != b.size()) throw std::invalid_argument("BitSeq: xor requires equal lengths");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return BitSeq(std::move(out));
}

}  // namespace crcscatter
