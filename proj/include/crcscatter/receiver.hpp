#pragma once

#include <cstdint>

#include "crcscatter/bitseq.hpp"
#include "crcscatter/frame.hpp"

namespace crcscatter {

enum class DecodeMode { crc_reverse, brute_force };

struct ReversedBody {
  BitSeq body;
  // The reverse pass always solves a 32-bit window ending at the last body
  // bit. For bodies shorter than 32 bits the window's leading bits belong to
  // the header tail; they are known, so the solver checks them against the
  // received header. false means the frame is not internally consistent
  // (noise corrupted the header or the FCS).
  bool prefix_consistent = true;
};

// Recovers the original (pre-substitution) body from header and FCS alone,
// without looking at the received body. Requires header bits plus body
// length to reach at least 32 bits.
ReversedBody reverse_original_checked(const MacFrame& frame);
BitSeq reverse_original(const MacFrame& frame);

// Tag bits from the body pair: the running XOR of (original xor backscatter)
// undoes the differential coupling. Lengths must match.
BitSeq decode_tag(const BitSeq& backscatter_body, const BitSeq& original_body);

struct DecodeResult {
  BitSeq original_body;
  BitSeq tag_data;
  bool accepted = true;  // redundancy verdict only
  DecodeMode mode = DecodeMode::crc_reverse;
  bool prefix_consistent = true;
};

// Two-stage decode: reverse the original body, then extract the tag.
// redundancy > 0 additionally checks the tag's parity tail; a failed check
// only clears `accepted`, the decoded bits are still returned.
DecodeResult decode_frame(const MacFrame& frame, unsigned redundancy = 0);

// Reference decoder: enumerates candidate bodies and keeps the one whose
// recomputed FCS matches the frame. Scans the whole candidate space and
// insists the match is unique. Refuses (BudgetExceeded) when 2^body_len
// exceeds the budget. Agrees with reverse_original on every decodable frame.
BitSeq brute_force_decode(const MacFrame& frame, std::uint64_t budget = 1ull << 24);

}  // namespace crcscatter
