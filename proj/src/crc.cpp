#include "crcscatter/crc.hpp"

namespace crcscatter {

CrcParams CrcParams::for_width(unsigned width) {
  switch (width) {
    case 4:
      return {4, 0x3u, 0xFu, 0xFu};
    case 8:
      return {8, 0x07u, 0xFFu, 0xFFu};
    case 16:
      return {16, 0x1021u, 0xFFFFu, 0xFFFFu};
    case 32:
      return {32, 0x04C11DB7u, 0xFFFFFFFFu, 0xFFFFFFFFu};
    default:
      throw std::invalid_argument("CrcParams: width must be 4, 8, 16 or 32");
  }
}

void CrcParams::validate() const {
  if (width != 4 && width != 8 && width != 16 && width != 32) {
    throw std::invalid_argument("CrcParams: width must be 4, 8, 16 or 32");
  }
  if ((poly & mask()) != poly || (init_xor & mask()) != init_xor ||
      (final_xor & mask()) != final_xor) {
    throw std::invalid_argument("CrcParams: value wider than register");
  }
  if ((poly & 1u) == 0) {
    throw std::invalid_argument("CrcParams: polynomial constant term must be 1");
  }
}

std::uint32_t crc_raw(std::uint32_t r_init, const BitSeq& data, const CrcParams& params) {
  params.validate();
  CrcState st{params, r_init & params.mask()};
  for (std::size_t i = 0; i < data.size(); ++i) st.step(data[i]);
  return st.reg;
}

std::uint32_t crc_full(const BitSeq& data, const CrcParams& params) {
  return crc_raw(params.init_xor, data, params) ^ params.final_xor;
}

std::uint32_t crc_reverse(std::uint32_t r_final, const BitSeq& data, const CrcParams& params) {
  params.validate();
  CrcState st{params, r_final & params.mask()};
  for (std::size_t i = data.size(); i-- > 0;) st.unstep(data[i]);
  return st.reg;
}

BitSeq solve_unknown_word(std::uint32_t r_final, std::uint32_t r_init, const CrcParams& params) {
  params.validate();
  const std::uint32_t a = crc_reverse(r_final, BitSeq::from_word(r_init, params.width), params);
  return BitSeq::from_word(a, params.width);
}

std::vector<BitSeq> enumerate_solutions(std::uint32_t r_final, std::uint32_t r_init,
                                        unsigned length, const CrcParams& params,
                                        std::uint64_t budget) {
  params.validate();
  if (length >= 63) throw std::invalid_argument("enumerate_solutions: length too large");
  const std::uint64_t space = 1ull << length;
  if (space > budget) {
    throw BudgetExceeded("enumerate_solutions: 2^" + std::to_string(length) +
                         " candidates exceed budget " + std::to_string(budget));
  }
  r_final &= params.mask();
  r_init &= params.mask();
  std::vector<BitSeq> out;
  for (std::uint64_t cand = 0; cand < space; ++cand) {
    CrcState st{params, r_init};
    for (unsigned j = 0; j < length; ++j) {
      st.step(static_cast<std::uint8_t>((cand >> (length - 1 - j)) & 1u));
    }
    if (st.reg == r_final) {
      BitSeq bits;
      for (unsigned j = 0; j < length; ++j) {
        bits.push_back(static_cast<std::uint8_t>((cand >> (length - 1 - j)) & 1u));
      }
      out.push_back(std::move(bits));
    }
  }
  return out;
}

}  // namespace crcscatter
