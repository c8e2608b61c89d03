#include "doctest.h"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "crcscatter/bitseq.hpp"
#include "crcscatter/crc.hpp"

using namespace crcscatter;

namespace {

// Reference checksum, deliberately built along a different route than the
// library: a precomputed byte table driving the classic table lookup loop.
// Only handles whole bytes, which is all the cross check needs.
struct TableCrc {
  CrcParams params;
  std::array<std::uint32_t, 256> table{};

  explicit TableCrc(const CrcParams& p) : params(p) {
    const std::uint32_t top = params.top_bit();
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t r = (params.width > 8) ? (i << (params.width - 8)) : (i >> (8 - params.width));
      for (int b = 0; b < 8; ++b) {
        r = (r & top) ? ((r << 1) ^ params.poly) : (r << 1);
        r &= params.mask();
      }
      table[i] = r;
    }
  }

  std::uint32_t compute(const std::vector<std::uint8_t>& bytes) const {
    std::uint32_t r = params.init_xor;
    for (std::uint8_t byte : bytes) {
      const std::uint32_t idx =
          (params.width > 8) ? (((r >> (params.width - 8)) ^ byte) & 0xFF)
                             : (((r << (8 - params.width)) ^ byte) & 0xFF);
      r = ((params.width > 8) ? (r << 8) : 0) ^ table[idx];
      r &= params.mask();
    }
    return (r ^ params.final_xor) & params.mask();
  }
};

std::vector<std::uint8_t> ascii_digits() {
  return {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(CrcParams{}.validate());
  CHECK_NOTHROW(CrcParams::for_width(4).validate());
  CHECK_NOTHROW(CrcParams::for_width(8).validate());
  CHECK_NOTHROW(CrcParams::for_width(16).validate());
  CHECK(CrcParams::for_width(32).poly == 0x04C11DB7u);
  CHECK_THROWS_AS(CrcParams::for_width(12), std::invalid_argument);

  CrcParams even = CrcParams::for_width(8);
  even.poly = 0x06;  // constant term missing, steps would not be invertible
  CHECK_THROWS_AS(even.validate(), std::invalid_argument);

  CrcParams narrow = CrcParams::for_width(8);
  narrow.init_xor = 0x100;
  CHECK_THROWS_AS(narrow.validate(), std::invalid_argument);
}

TEST_CASE("frozen checksums") {
  const BitSeq digits = BitSeq::from_bytes(ascii_digits());
  CHECK(crc_full(digits) == 0xFC891918u);
  CHECK(crc_full(digits, CrcParams::for_width(16)) == 0xD64Eu);
  CHECK(crc_full(digits, CrcParams::for_width(8)) == 0x04u);
  CHECK(crc_full(digits, CrcParams::for_width(4)) == 0xBu);
  CHECK(crc_full(BitSeq::zeros(224)) == 0x97EE0E01u);
}

TEST_CASE("library checksum matches the table reference") {
  std::mt19937_64 rng(2024);
  for (unsigned width : {8u, 16u, 32u}) {
    const CrcParams params = CrcParams::for_width(width);
    const TableCrc reference(params);
    CHECK(reference.compute(ascii_digits()) == crc_full(BitSeq::from_bytes(ascii_digits()), params));
    for (int iter = 0; iter < 200; ++iter) {
      std::vector<std::uint8_t> bytes(1 + (rng() % 64));
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng() & 0xFF);
      CHECK(reference.compute(bytes) == crc_full(BitSeq::from_bytes(bytes), params));
    }
  }
}

TEST_CASE("single register steps invert exactly") {
  for (unsigned width : {4u, 8u, 16u, 32u}) {
    const CrcParams params = CrcParams::for_width(width);
    std::mt19937_64 rng(7u + width);
    for (int iter = 0; iter < 1000; ++iter) {
      const std::uint32_t reg = static_cast<std::uint32_t>(rng()) & params.mask();
      const std::uint8_t bit = rng() & 1;
      CrcState st{params, reg};
      st.step(bit);
      st.unstep(bit);
      CHECK(st.reg == reg);
    }
  }
}

TEST_CASE("reverse recursion recovers the initial register") {
  std::mt19937_64 rng(11);
  for (unsigned width : {4u, 8u, 32u}) {
    const CrcParams params = CrcParams::for_width(width);
    for (int iter = 0; iter < 300; ++iter) {
      const std::uint32_t r0 = static_cast<std::uint32_t>(rng()) & params.mask();
      const BitSeq data = BitSeq::random(rng() % 130, rng);
      const std::uint32_t r1 = crc_raw(r0, data, params);
      CHECK(crc_reverse(r1, data, params) == r0);
    }
  }
}

TEST_CASE("register and data words commute") {
  // width 8: every (register, word) pair
  const CrcParams p8 = CrcParams::for_width(8);
  for (std::uint32_t r = 0; r < 256; ++r) {
    for (std::uint32_t a = 0; a < 256; ++a) {
      CHECK(crc_raw(r, BitSeq::from_word(a, 8), p8) ==
            crc_raw(a, BitSeq::from_word(r, 8), p8));
    }
  }

  // width 32: randomized
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::uint32_t r = static_cast<std::uint32_t>(rng());
    const std::uint32_t a = static_cast<std::uint32_t>(rng());
    CHECK(crc_raw(r, BitSeq::from_word(a, 32)) == crc_raw(a, BitSeq::from_word(r, 32)));
  }
}

TEST_CASE("word map is affine in register and data") {
  // With T[r][a] = crc_raw(r, word a): T[0][0] == 0, and T splits into
  // independent register and data contributions. Checked for every width 8
  // pair, which is the same as additivity over arbitrary quadruples.
  const CrcParams p8 = CrcParams::for_width(8);
  CHECK(crc_raw(0, BitSeq::from_word(0, 8), p8) == 0);

  std::array<std::uint32_t, 256> reg_part{};
  std::array<std::uint32_t, 256> data_part{};
  for (std::uint32_t r = 0; r < 256; ++r) reg_part[r] = crc_raw(r, BitSeq::from_word(0, 8), p8);
  for (std::uint32_t a = 0; a < 256; ++a) data_part[a] = crc_raw(0, BitSeq::from_word(a, 8), p8);
  for (std::uint32_t r = 0; r < 256; ++r) {
    for (std::uint32_t a = 0; a < 256; ++a) {
      CHECK(crc_raw(r, BitSeq::from_word(a, 8), p8) == (reg_part[r] ^ data_part[a]));
    }
  }

  // width 32 spot checks of the quadruple form
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 500; ++iter) {
    const std::uint32_t r1 = static_cast<std::uint32_t>(rng());
    const std::uint32_t r2 = static_cast<std::uint32_t>(rng());
    const std::uint32_t a1 = static_cast<std::uint32_t>(rng());
    const std::uint32_t a2 = static_cast<std::uint32_t>(rng());
    const std::uint32_t lhs = crc_raw(r1 ^ r2, BitSeq::from_word(a1 ^ a2, 32));
    const std::uint32_t rhs = crc_raw(r1, BitSeq::from_word(a1, 32)) ^
                              crc_raw(r2, BitSeq::from_word(a2, 32));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("solving for the data word inverts the forward map") {
  std::mt19937_64 rng(19);
  for (unsigned width : {4u, 8u, 16u, 32u}) {
    const CrcParams params = CrcParams::for_width(width);
    for (int iter = 0; iter < 500; ++iter) {
      const std::uint32_t r0 = static_cast<std::uint32_t>(rng()) & params.mask();
      const std::uint32_t a = static_cast<std::uint32_t>(rng()) & params.mask();
      const std::uint32_t r1 = crc_raw(r0, BitSeq::from_word(a, width), params);
      CHECK(solve_unknown_word(r1, r0, params).to_word(width) == a);
    }
  }
}

TEST_CASE("solution counts over sequence length") {
  const CrcParams p8 = CrcParams::for_width(8);
  std::mt19937_64 rng(23);
  for (unsigned length = 4; length <= 12; ++length) {
    for (int iter = 0; iter < 20; ++iter) {
      const std::uint32_t r0 = static_cast<std::uint32_t>(rng()) & 0xFF;
      const std::uint32_t r1 = static_cast<std::uint32_t>(rng()) & 0xFF;
      const auto sols = enumerate_solutions(r1, r0, length, p8);
      for (const auto& s : sols) {
        CHECK(s.size() == length);
        CHECK(crc_raw(r0, s, p8) == r1);
      }
      if (length >= 8) {
        // onto beyond the register width: exactly 2^(length-8) preimages
        CHECK(sols.size() == (1ull << (length - 8)));
      } else {
        // injective below it: at most one
        CHECK(sols.size() <= 1);
      }
    }
  }

  // a solvable short case: derive the target from a known sequence
  const BitSeq known = BitSeq::from_bit_string("10110");
  const auto sols = enumerate_solutions(crc_raw(0x5A, known, p8), 0x5A, 5, p8);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == known);
}

TEST_CASE("enumeration refuses oversized candidate spaces") {
  CHECK_THROWS_AS((void)enumerate_solutions(0, 0, 25, CrcParams::for_width(8), 1u << 24),
                  BudgetExceeded);
  CHECK_NOTHROW((void)enumerate_solutions(0, 0, 10, CrcParams::for_width(8), 1u << 24));
}
