#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "crcscatter/bitseq.hpp"

namespace crcscatter {

// Non-reflected CRC register parameters. The polynomial is written without
// its implicit leading term and must have its constant term set (odd poly);
// that is what makes every register step invertible.
struct CrcParams {
  unsigned width = 32;
  std::uint32_t poly = 0x04C11DB7u;
  std::uint32_t init_xor = 0xFFFFFFFFu;
  std::uint32_t final_xor = 0xFFFFFFFFu;

  // Default parameter sets for the supported widths 4, 8, 16, 32.
  static CrcParams for_width(unsigned width);

  std::uint32_t mask() const {
    return width >= 32 ? 0xFFFFFFFFu : ((1u << width) - 1u);
  }
  std::uint32_t top_bit() const { return 1u << (width - 1); }
  void validate() const;
};

// Shift register caught mid-stream. step consumes one data bit; unstep is its
// exact inverse, consuming the same bit from the other end.
struct CrcState {
  CrcParams params{};
  std::uint32_t reg = 0;

  void step(std::uint8_t bit) {
    const bool shifted_out = (reg & params.top_bit()) != 0;
    reg = (reg << 1) & params.mask();
    if (shifted_out != (bit != 0)) reg ^= params.poly;
  }

  void unstep(std::uint8_t bit) {
    std::uint8_t msb;
    if (reg & 1u) {
      // the forward step applied the polynomial here
      reg ^= params.poly;
      reg >>= 1;
      msb = bit ^ 1u;
    } else {
      reg >>= 1;
      msb = bit;
    }
    if (msb) reg |= params.top_bit();
  }
};

// Register recursion without init/final conditioning: feeds data through the
// shift register starting from r_init.
std::uint32_t crc_raw(std::uint32_t r_init, const BitSeq& data, const CrcParams& params = {});

// Checksum as it appears in a frame: crc_raw from init_xor, then final_xor.
std::uint32_t crc_full(const BitSeq& data, const CrcParams& params = {});

// Runs the register recursion backwards: returns the unique r_init such that
// crc_raw(r_init, data) == r_final.
std::uint32_t crc_reverse(std::uint32_t r_final, const BitSeq& data, const CrcParams& params = {});

// The unique width-bit word a with crc_raw(r_init, a) == r_final. Uses the
// register/data exchange identity: feeding r_init as data from register a
// reaches the same final state, so reversing from r_final over the bits of
// r_init recovers a.
BitSeq solve_unknown_word(std::uint32_t r_final, std::uint32_t r_init, const CrcParams& params = {});

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Every length-bit sequence a with crc_raw(r_init, a) == r_final, found by
// exhaustive search. 2^length candidates are scanned, so the call refuses
// (throws BudgetExceeded) when 2^length > budget. Expected solution counts:
// none or exactly one for length <= width, exactly 2^(length - width) for
// longer sequences.
std::vector<BitSeq> enumerate_solutions(std::uint32_t r_final, std::uint32_t r_init,
                                        unsigned length, const CrcParams& params = {},
                                        std::uint64_t budget = 1ull << 24);

}  // namespace crcscatter
