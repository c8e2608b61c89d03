#include "crcscatter/frame.hpp"

#include <stdexcept>

namespace crcscatter {

namespace {

void check_body_len(const BitSeq& body) {
  if (body.size() < kMinBodyBits || body.size() > kMaxBodyBits) {
    throw std::invalid_argument("frame body must be 1..32 bits");
  }
}

BitSeq covered_bits(const MacFrame& frame) {
  BitSeq bits = BitSeq::from_bytes(frame.header);
  bits.append(frame.body);
  return bits;
}

}  // namespace

const std::vector<std::uint8_t> kPlcpPreamble = {0xAA, 0xAA, 0xAA, 0xAA,
                                                 0xAA, 0xAA, 0xAA, 0xF3};
const std::vector<std::uint8_t> kPlcpHeader = {0x0A, 0x01, 0x00, 0x00};

std::vector<std::uint8_t> default_header(std::size_t len) {
  std::vector<std::uint8_t> h(len);
  for (std::size_t i = 0; i < len; ++i) h[i] = static_cast<std::uint8_t>(i & 0xFF);
  return h;
}

MacFrame build_frame(std::vector<std::uint8_t> header, BitSeq body) {
  check_body_len(body);
  MacFrame f{std::move(header), std::move(body), 0};
  f.fcs = crc_full(covered_bits(f));
  return f;
}

MacFrame assemble_frame(std::vector<std::uint8_t> header, BitSeq body, std::uint32_t fcs) {
  check_body_len(body);
  return MacFrame{std::move(header), std::move(body), fcs};
}

bool validate_fcs(const MacFrame& frame) {
  return crc_full(covered_bits(frame)) == frame.fcs;
}

MacFrame substitute_body(const MacFrame& frame, BitSeq new_body) {
  if (new_body.size() != frame.body.size()) {
    throw std::invalid_argument("substitute_body: replacement length must match");
  }
  return MacFrame{frame.header, std::move(new_body), frame.fcs};
}

std::uint32_t header_register(const MacFrame& frame, const CrcParams& params) {
  return crc_raw(params.init_xor, BitSeq::from_bytes(frame.header), params);
}

BitSeq frame_bits(const MacFrame& frame) {
  BitSeq bits = covered_bits(frame);
  bits.append(BitSeq::from_word(frame.fcs, 32));
  return bits;
}

namespace {

std::string bits_to_padded_hex(const BitSeq& bits) {
  BitSeq padded = bits;
  while (padded.size() % 8 != 0) padded.push_back(0);
  return padded.to_hex();
}

}  // namespace

std::string frame_to_hex(const MacFrame& frame) {
  return bits_to_padded_hex(frame_bits(frame));
}

MacFrame frame_from_hex(std::string_view hex, std::size_t header_len, std::size_t body_len) {
  if (body_len < kMinBodyBits || body_len > kMaxBodyBits) {
    throw std::invalid_argument("frame body must be 1..32 bits");
  }
  const BitSeq bits = BitSeq::from_hex(hex);
  const std::size_t need = header_len * 8 + body_len + 32;
  if (bits.size() < need || bits.size() - need >= 8) {
    throw std::invalid_argument("frame hex length does not match header/body lengths");
  }
  // padding bits must be zero
  for (std::size_t i = need; i < bits.size(); ++i) {
    if (bits[i] != 0) throw std::invalid_argument("nonzero padding in frame hex");
  }
  std::vector<std::uint8_t> header = bits.slice(0, header_len * 8).to_bytes();
  BitSeq body = bits.slice(header_len * 8, body_len);
  const std::uint32_t fcs = bits.slice(header_len * 8 + body_len, 32).to_word(32);
  return assemble_frame(std::move(header), std::move(body), fcs);
}

std::string packet_to_hex(const MacFrame& frame) {
  BitSeq bits = BitSeq::from_bytes(kPlcpPreamble);
  bits.append(BitSeq::from_bytes(kPlcpHeader));
  bits.append(frame_bits(frame));
  return bits_to_padded_hex(bits);
}

MacFrame packet_from_hex(std::string_view hex, std::size_t header_len, std::size_t body_len) {
  const BitSeq bits = BitSeq::from_hex(hex);
  const std::size_t marker_bits = (kPlcpPreamble.size() + kPlcpHeader.size()) * 8;
  if (bits.size() < marker_bits) throw std::invalid_argument("packet hex too short");
  BitSeq markers = BitSeq::from_bytes(kPlcpPreamble);
  markers.append(BitSeq::from_bytes(kPlcpHeader));
  if (bits.slice(0, marker_bits) != markers) {
    throw std::invalid_argument("packet does not start with the PLCP markers");
  }
  BitSeq rest = bits.slice(marker_bits, bits.size() - marker_bits);
  while (rest.size() % 4 != 0) rest.push_back(0);
  return frame_from_hex(rest.to_hex(), header_len, body_len);
}

}  // namespace crcscatter
