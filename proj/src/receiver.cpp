#include "crcscatter/receiver.hpp"

#include <stdexcept>

#include "crcscatter/backscatter.hpp"
#include "crcscatter/crc.hpp"

namespace crcscatter {

namespace {

constexpr CrcParams kFcsParams{};

}  // namespace

ReversedBody reverse_original_checked(const MacFrame& frame) {
  const std::size_t n = frame.body.size();
  const std::size_t header_bits = frame.header.size() * 8;
  if (n < kMinBodyBits || n > kMaxBodyBits) {
    throw std::invalid_argument("reverse_original: body must be 1..32 bits");
  }
  if (header_bits + n < 32) {
    throw std::invalid_argument("reverse_original: fewer than 32 covered bits");
  }

  // Solve window: the last 32 bits of header ∥ body. Its register seed is the
  // CRC state just before the window.
  BitSeq covered = BitSeq::from_bytes(frame.header);
  covered.append(frame.body);
  const std::size_t prefix_len = covered.size() - 32;
  const std::uint32_t r_prime =
      crc_raw(kFcsParams.init_xor, covered.slice(0, prefix_len), kFcsParams);
  const std::uint32_t r = frame.fcs ^ kFcsParams.final_xor;
  const BitSeq window = solve_unknown_word(r, r_prime, kFcsParams);

  ReversedBody out;
  out.body = window.slice(32 - n, n);
  out.prefix_consistent = (window.slice(0, 32 - n) == covered.slice(prefix_len, 32 - n));
  return out;
}

BitSeq reverse_original(const MacFrame& frame) { return reverse_original_checked(frame).body; }

BitSeq decode_tag(const BitSeq& backscatter_body, const BitSeq& original_body) {
  if (backscatter_body.size() != original_body.size()) {
    throw std::invalid_argument("decode_tag: body lengths must match");
  }
  BitSeq tag;
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < original_body.size(); ++i) {
    acc ^= backscatter_body[i] ^ original_body[i];
    tag.push_back(acc);
  }
  return tag;
}

DecodeResult decode_frame(const MacFrame& frame, unsigned redundancy) {
  if (redundancy != 0 && redundancy != 4) {
    throw std::invalid_argument("decode_frame: redundancy must be 0 or 4");
  }
  ReversedBody reversed = reverse_original_checked(frame);
  DecodeResult out;
  out.tag_data = decode_tag(frame.body, reversed.body);
  out.original_body = std::move(reversed.body);
  out.prefix_consistent = reversed.prefix_consistent;
  out.mode = DecodeMode::crc_reverse;
  out.accepted = check_redundancy(out.tag_data, redundancy);
  return out;
}

BitSeq brute_force_decode(const MacFrame& frame, std::uint64_t budget) {
  const std::size_t n = frame.body.size();
  if (n < kMinBodyBits || n > kMaxBodyBits) {
    throw std::invalid_argument("brute_force_decode: body must be 1..32 bits");
  }
  const std::uint64_t space = 1ull << n;
  if (space > budget) {
    throw BudgetExceeded("brute_force_decode: 2^" + std::to_string(n) +
                         " candidates exceed budget " + std::to_string(budget));
  }

  // Recomputing the header prefix once per frame leaves 2^n candidate tails.
  const std::uint32_t r_header = header_register(frame, kFcsParams);
  const std::uint32_t target = frame.fcs ^ kFcsParams.final_xor;

  std::uint64_t match = 0;
  std::uint64_t matches = 0;
  for (std::uint64_t cand = 0; cand < space; ++cand) {
    CrcState st{kFcsParams, r_header};
    for (std::size_t j = 0; j < n; ++j) {
      st.step(static_cast<std::uint8_t>((cand >> (n - 1 - j)) & 1u));
    }
    if (st.reg == target) {
      match = cand;
      ++matches;
    }
  }
  if (matches == 0) {
    throw std::runtime_error("brute_force_decode: no body reproduces the FCS");
  }
  if (matches > 1) {
    throw std::runtime_error("brute_force_decode: FCS match is not unique");
  }
  return BitSeq::from_word(static_cast<std::uint32_t>(match), static_cast<unsigned>(n));
}

}  // namespace crcscatter
