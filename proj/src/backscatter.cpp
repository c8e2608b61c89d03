#include "crcscatter/backscatter.hpp"

#include <stdexcept>

namespace crcscatter {

DiffStream diff_encode(const BitSeq& data, std::uint8_t reference) {
  if (reference > 1) throw std::invalid_argument("diff_encode: reference must be 0 or 1");
  DiffStream out;
  out.reference = reference;
  std::uint8_t state = reference;
  for (std::size_t i = 0; i < data.size(); ++i) {
    state ^= data[i];
    out.bits.push_back(state);
  }
  return out;
}

BitSeq diff_decode(const DiffStream& stream) {
  if (stream.reference > 1) throw std::invalid_argument("diff_decode: reference must be 0 or 1");
  BitSeq out;
  std::uint8_t prev = stream.reference;
  for (std::size_t i = 0; i < stream.bits.size(); ++i) {
    out.push_back(prev ^ stream.bits[i]);
    prev = stream.bits[i];
  }
  return out;
}

DiffStream tag_modulate(const DiffStream& stream, const BitSeq& tag, std::size_t offset) {
  if (offset > stream.bits.size() || tag.size() > stream.bits.size() - offset) {
    throw std::out_of_range("tag_modulate: tag window exceeds the stream");
  }
  DiffStream out = stream;
  for (std::size_t i = 0; i < tag.size(); ++i) {
    out.bits.set(offset + i, out.bits[offset + i] ^ tag[i]);
  }
  return out;
}

DiffStream apply_tag_to_frame_stream(const DiffStream& stream, const BitSeq& tag,
                                     std::size_t body_offset, std::size_t body_len) {
  if (body_offset > stream.bits.size() || body_len > stream.bits.size() - body_offset) {
    throw std::out_of_range("apply_tag_to_frame_stream: body window exceeds the stream");
  }
  if (tag.size() > body_len) {
    throw std::invalid_argument("apply_tag_to_frame_stream: tag overlaps header or FCS region");
  }
  if (tag.empty()) return stream;
  DiffStream out = stream;
  for (std::size_t i = 0; i < tag.size(); ++i) {
    out.bits.set(body_offset + i, out.bits[body_offset + i] ^ tag[i]);
  }
  // the switch stays in its last state for the rest of the frame
  const std::uint8_t held = tag[tag.size() - 1];
  if (held) {
    for (std::size_t i = body_offset + tag.size(); i < stream.bits.size(); ++i) {
      out.bits.set(i, out.bits[i] ^ 1u);
    }
  }
  return out;
}

TagPayload attach_redundancy(const BitSeq& data) {
  if (data.size() + 4 > 32) {
    throw std::invalid_argument("attach_redundancy: payload would exceed 32 bits");
  }
  if (data.empty()) throw std::invalid_argument("attach_redundancy: empty data");
  TagPayload out;
  out.redundancy = 4;
  out.data = data;
  for (unsigned j = 0; j < 4; ++j) {
    std::uint8_t p = 0;
    for (std::size_t i = j; i < data.size(); i += 4) p ^= data[i];
    out.data.push_back(p);
  }
  return out;
}

bool check_redundancy(const BitSeq& payload, unsigned redundancy) {
  if (redundancy == 0) return true;
  if (redundancy != 4) throw std::invalid_argument("check_redundancy: redundancy must be 0 or 4");
  if (payload.size() <= redundancy) {
    throw std::invalid_argument("check_redundancy: payload shorter than its parity tail");
  }
  const std::size_t data_len = payload.size() - 4;
  for (unsigned j = 0; j < 4; ++j) {
    std::uint8_t p = 0;
    for (std::size_t i = j; i < data_len; i += 4) p ^= payload[i];
    if (p != payload[data_len + j]) return false;
  }
  return true;
}

}  // namespace crcscatter
