#include "doctest.h"

#include <random>
#include <stdexcept>

#include "crcscatter/bitseq.hpp"

using crcscatter::BitSeq;

TEST_CASE("bit sequence construction and round trips") {
  SUBCASE("zeros") {
    const BitSeq z = BitSeq::zeros(10);
    CHECK(z.size() == 10);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == 0);
  }

  SUBCASE("byte packing is MSB first") {
    const std::vector<std::uint8_t> packed{0x80, 0x01};
    const BitSeq s = BitSeq::from_bytes(packed);
    CHECK(s.size() == 16);
    CHECK(s[0] == 1);
    CHECK(s[1] == 0);
    CHECK(s[15] == 1);
    CHECK(s.to_bytes() == std::vector<std::uint8_t>{0x80, 0x01});
  }

  SUBCASE("word packing puts the MSB at index 0") {
    const BitSeq s = BitSeq::from_word(0x80000001u, 32);
    CHECK(s[0] == 1);
    CHECK(s[31] == 1);
    CHECK(s[16] == 0);
    CHECK(s.to_word(32) == 0x80000001u);
  }

  SUBCASE("narrow words") {
    const BitSeq s = BitSeq::from_word(0xB, 4);
    CHECK(s.to_bit_string() == "1011");
    CHECK(s.to_word(4) == 0xB);
    CHECK_THROWS_AS((void)BitSeq::from_word(0x10, 4), std::invalid_argument);
  }

  SUBCASE("bit strings") {
    const BitSeq s = BitSeq::from_bit_string("11010");
    CHECK(s.size() == 5);
    CHECK(s.to_bit_string() == "11010");
    CHECK_THROWS_AS((void)BitSeq::from_bit_string("10x"), std::invalid_argument);
  }

  SUBCASE("hex round trip") {
    const BitSeq s = BitSeq::from_hex("0xDEADBEEF");
    CHECK(s.size() == 32);
    CHECK(s.to_hex() == "DEADBEEF");
    CHECK(BitSeq::from_hex("deadbeef") == s);
    CHECK_THROWS_AS((void)BitSeq::from_hex("12G4"), std::invalid_argument);
  }

  SUBCASE("invalid raw bit values are rejected") {
    CHECK_THROWS_AS(BitSeq(std::vector<std::uint8_t>{0, 1, 2}), std::invalid_argument);
  }
}

TEST_CASE("bit sequence editing and slicing") {
  BitSeq s = BitSeq::from_bit_string("10110");
  s.set(0, 0);
  CHECK(s.to_bit_string() == "00110");
  s.push_back(1);
  CHECK(s.to_bit_string() == "001101");
  s.append(BitSeq::from_bit_string("11"));
  CHECK(s.to_bit_string() == "00110111");

  CHECK(s.slice(2, 4).to_bit_string() == "1101");
  CHECK(s.slice(0, 0).empty());
  CHECK_THROWS_AS((void)s.slice(7, 2), std::out_of_range);
  CHECK_THROWS_AS((void)s.to_word(16), std::invalid_argument);
  CHECK_THROWS_AS((void)BitSeq::from_bit_string("101").to_bytes(), std::invalid_argument);
  CHECK_THROWS_AS((void)BitSeq::from_bit_string("101").to_hex(), std::invalid_argument);
}

TEST_CASE("xor and hamming distance") {
  const BitSeq a = BitSeq::from_bit_string("1100");
  const BitSeq b = BitSeq::from_bit_string("1010");
  CHECK((a ^ b).to_bit_string() == "0110");
  CHECK(a.hamming_distance(b) == 2);
  CHECK(a.hamming_distance(a) == 0);
  CHECK_THROWS_AS((void)(a ^ BitSeq::from_bit_string("10")), std::invalid_argument);
  CHECK_THROWS_AS((void)a.hamming_distance(BitSeq::from_bit_string("10")),
                  std::invalid_argument);
}

TEST_CASE("random sequences are reproducible per seed") {
  std::mt19937_64 rng_a(42);
  std::mt19937_64 rng_b(42);
  std::mt19937_64 rng_c(43);
  const BitSeq a = BitSeq::random(64, rng_a);
  const BitSeq b = BitSeq::random(64, rng_b);
  const BitSeq c = BitSeq::random(64, rng_c);
  CHECK(a == b);
  CHECK(a != c);

  // sanity: not constant
  std::size_t ones = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ones += a[i];
  CHECK(ones > 0);
  CHECK(ones < 64);
}
