#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crcscatter/bitseq.hpp"
#include "crcscatter/crc.hpp"

namespace crcscatter {

inline constexpr std::size_t kMinBodyBits = 1;
inline constexpr std::size_t kMaxBodyBits = 32;
inline constexpr std::size_t kDefaultHeaderLen = 24;

// MAC frame at 802.11b granularity: header octets, a short frame body
// (1..32 bits, not necessarily octet aligned) and the 32-bit FCS computed
// over header and body.
struct MacFrame {
  std::vector<std::uint8_t> header;
  BitSeq body;
  std::uint32_t fcs = 0;
};

// 24 octets 0x00..0x17.
std::vector<std::uint8_t> default_header(std::size_t len = kDefaultHeaderLen);

// Computes the FCS. Body length outside 1..32 is rejected.
MacFrame build_frame(std::vector<std::uint8_t> header, BitSeq body);

// Builds a frame with a caller-supplied FCS, as on the receive path. No FCS
// consistency is implied.
MacFrame assemble_frame(std::vector<std::uint8_t> header, BitSeq body, std::uint32_t fcs);

bool validate_fcs(const MacFrame& frame);

// Replaces the body and keeps the FCS byte for byte; this is exactly what a
// codeword-translating tag does to a frame in flight. The replacement must
// have the same length as the original body.
MacFrame substitute_body(const MacFrame& frame, BitSeq new_body);

// CRC register state after the header octets, starting from init_xor. The
// reverse decoder starts from this state.
std::uint32_t header_register(const MacFrame& frame, const CrcParams& params = {});

// header ∥ body ∥ fcs as one transmitted bit stream.
BitSeq frame_bits(const MacFrame& frame);

// Inert PLCP markers. Ideal synchronization is assumed everywhere, the
// markers only give serialized packets a recognizable shape.
extern const std::vector<std::uint8_t> kPlcpPreamble;
extern const std::vector<std::uint8_t> kPlcpHeader;

// Hex serialization. Frame bits are packed MSB-first and the last byte is
// zero padded; parsing therefore needs the header and body lengths.
std::string frame_to_hex(const MacFrame& frame);
MacFrame frame_from_hex(std::string_view hex, std::size_t header_len, std::size_t body_len);

// Same with PLCP markers in front.
std::string packet_to_hex(const MacFrame& frame);
MacFrame packet_from_hex(std::string_view hex, std::size_t header_len, std::size_t body_len);

}  // namespace crcscatter
