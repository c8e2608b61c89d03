#pragma once

#include <cstdint>

#include "crcscatter/bitseq.hpp"

namespace crcscatter {

// Differentially encoded bit stream: bits[i] is the phase state of symbol i,
// reference is the state entering the stream (the value of e[-1]).
struct DiffStream {
  BitSeq bits;
  std::uint8_t reference = 0;
};

// e[i] = e[i-1] xor a[i]. A data bit of 1 flips the phase, 0 keeps it.
DiffStream diff_encode(const BitSeq& data, std::uint8_t reference = 0);

// Inverse: a[i] = e[i] xor e[i-1].
BitSeq diff_decode(const DiffStream& stream);

struct TagPayload {
  BitSeq data;              // true tag bits, including any parity tail
  unsigned redundancy = 0;  // number of trailing parity bits (0 or 4)
};

// XORs the tag onto stream positions [offset, offset + tag.size()); the rest
// of the stream is untouched. Applying the same tag twice restores the input.
DiffStream tag_modulate(const DiffStream& stream, const BitSeq& tag, std::size_t offset);

// Packet-level tag application. The tag toggles the phase only across the
// frame body window, and its final state is held through the remainder of
// the frame: a constant phase offset is invisible to differential decoding,
// so header and FCS survive bit for bit. The tag must fit the body window
// ([body_offset, body_offset + body_len)); anything spilling into header or
// FCS territory is rejected.
DiffStream apply_tag_to_frame_stream(const DiffStream& stream, const BitSeq& tag,
                                     std::size_t body_offset, std::size_t body_len);

// Appends 4 interleaved even-parity bits: parity bit j covers the data bits
// whose position is congruent to j mod 4. Any single corrupted payload bit
// flips exactly one parity class, so it is always detected.
TagPayload attach_redundancy(const BitSeq& data);

// Recomputes the parity tail. redundancy == 0 always passes.
bool check_redundancy(const BitSeq& payload, unsigned redundancy);

}  // namespace crcscatter
