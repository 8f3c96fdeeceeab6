#include <gtest/gtest.h>

#include <vector>

#include "advice_hunt/bitcodec.hpp"
#include "advice_hunt/random.hpp"

using namespace advice_hunt;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

std::vector<BitString> list(std::initializer_list<const char*> items) {
  std::vector<BitString> out;
  for (const char* s : items) out.push_back(bits(s));
  return out;
}

}  // namespace

TEST(Concat, WorkedExample) {
  EXPECT_EQ(concat(list({"01"}), bits("00")).to_string(), "0011010000");
}

TEST(Concat, EmptySubstringThenOne) {
  EXPECT_EQ(concat(list({""}), bits("1")).to_string(), "0111");
}

TEST(Concat, TwoSubstrings) {
  EXPECT_EQ(concat(list({"1", "0"}), bits("10")).to_string(), "110100011100");
}

TEST(Decode, WorkedExampleInverted) {
  const AdvicePayload p = decode(bits("0011010000"));
  ASSERT_EQ(p.distance(), 1U);
  EXPECT_EQ(p.substrings[0].to_string(), "01");
  EXPECT_EQ(p.logsum_bits.to_string(), "00");
  EXPECT_EQ(p.logsum(), 0U);
}

TEST(Decode, EmptyInput) {
  const AdvicePayload p = decode(BitString{});
  EXPECT_EQ(p.distance(), 0U);
  EXPECT_EQ(p.logsum_bits.size(), 0U);
}

TEST(Decode, RejectsOddLength) {
  try {
    decode(bits("001"));
    FAIL() << "expected MalformedAdvice";
  } catch (const MalformedAdvice& e) {
    EXPECT_EQ(e.offset(), 2U);
  }
}

TEST(Decode, RejectsTenPair) {
  try {
    decode(bits("0010"));
    FAIL() << "expected MalformedAdvice";
  } catch (const MalformedAdvice& e) {
    EXPECT_EQ(e.offset(), 2U);
  }
}

TEST(Decode, RoundTripRandomPayloads) {
  Rng rng(20240601);
  for (int trial = 0; trial < 10000; ++trial) {
    AdvicePayload p;
    const auto count = uniform_between(rng, 0, 8);
    for (std::uint64_t i = 0; i <= count; ++i) {
      BitString s;
      const auto len = uniform_between(rng, 0, 12);
      for (std::uint64_t j = 0; j < len; ++j) s.push_back(uniform_below(rng, 2) == 1);
      if (i == count) {
        p.logsum_bits = s;
      } else {
        p.substrings.push_back(s);
      }
    }
    const BitString enc = concat(p);
    EXPECT_EQ(enc.size(), 2 * (p.total_substring_bits() + p.logsum_bits.size()) + 2 * p.distance());
    const AdvicePayload back = decode(enc);
    ASSERT_EQ(back.substrings, p.substrings);
    ASSERT_EQ(back.logsum_bits, p.logsum_bits);
    ASSERT_EQ(concat(back), enc);
  }
}

TEST(BitString, MinimalBinary) {
  EXPECT_EQ(BitString::minimal_binary(0).to_string(), "0");
  EXPECT_EQ(BitString::minimal_binary(1).to_string(), "1");
  EXPECT_EQ(BitString::minimal_binary(6).to_string(), "110");
}

TEST(BitString, RejectsBadCharacters) { EXPECT_THROW(bits("01x"), std::invalid_argument); }

TEST(ExpectedSubstringLength, Examples) {
  EXPECT_EQ(expected_substring_length(8, 2, 3), 2U);
  EXPECT_EQ(expected_substring_length(1, 5, 9), 0U);
  EXPECT_EQ(expected_substring_length(1, 0, 0), 0U);
  EXPECT_EQ(expected_substring_length(4, 7, 7), 2U);
}

TEST(ExpectedSubstringLength, ZeroLogSumAtBranchingNodeIsMismatch) {
  EXPECT_EQ(expected_substring_length(3, 0, 0), std::nullopt);
}

TEST(ExpectedSubstringLength, CeilLog2) {
  EXPECT_EQ(ceil_log2(1), 0U);
  EXPECT_EQ(ceil_log2(2), 1U);
  EXPECT_EQ(ceil_log2(3), 2U);
  EXPECT_EQ(ceil_log2(4), 2U);
  EXPECT_EQ(ceil_log2(5), 3U);
  EXPECT_EQ(ceil_log2(1025), 11U);
}

TEST(EncodeSectorNumber, Examples) {
  EXPECT_EQ(encode_sector_number(8, 5, 2).to_string(), "10");
  EXPECT_EQ(encode_sector_number(8, 7, 3).to_string(), "111");
  EXPECT_EQ(encode_sector_number(13, 6, 0).size(), 0U);
  EXPECT_THROW(encode_sector_number(4, 4, 1), std::invalid_argument);
}

TEST(GetSector, Examples) {
  const PortRange a = get_sector(8, bits("10"));
  EXPECT_EQ(a.first, 4U);
  EXPECT_EQ(a.last, 5U);
  const PortRange b = get_sector(5, BitString{});
  EXPECT_EQ(b.first, 0U);
  EXPECT_EQ(b.last, 4U);
  const PortRange c = get_sector(5, bits("11"));
  EXPECT_EQ(c.first, 6U);
  EXPECT_EQ(c.last, 7U);
}

TEST(Sectors, Soundness) {
  for (std::uint64_t deg = 1; deg <= 70; ++deg) {
    for (std::uint64_t port = 0; port < deg; ++port) {
      for (std::uint64_t z = 0; z <= ceil_log2(deg) + 1; ++z) {
        const PortRange r = get_sector(deg, encode_sector_number(deg, port, z));
        ASSERT_TRUE(r.contains(port)) << deg << ' ' << port << ' ' << z;
      }
    }
  }
}

TEST(Sectors, SizeAtMostTwiceDegOverTwoToZ) {
  for (std::uint64_t deg = 1; deg <= 64; ++deg) {
    for (std::uint64_t logsum = 1; logsum <= 24; ++logsum) {
      for (std::uint64_t ell = 0; ell < logsum; ++ell) {
        const std::uint64_t z = *expected_substring_length(deg, ell, logsum);
        const std::uint64_t size = sector_size(deg, z);
        ASSERT_LE(size << z, 2 * deg) << deg << ' ' << ell << '/' << logsum;
      }
    }
  }
}

TEST(Sectors, FullAdviceGivesSinglePort) {
  for (std::uint64_t deg = 1; deg <= (1U << 16); ++deg) {
    ASSERT_EQ(sector_size(deg, ceil_log2(deg)), 1U) << deg;
  }
}

TEST(Sectors, AtMostOneShortSector) {
  for (std::uint64_t deg = 1; deg <= 64; ++deg) {
    for (std::uint64_t z = 0; z <= ceil_log2(deg); ++z) {
      const std::uint64_t size = sector_size(deg, z);
      int short_sectors = 0;
      bool short_is_last_nonempty = true;
      for (std::uint64_t number = 0; number < (std::uint64_t{1} << z); ++number) {
        const PortRange r = get_sector(deg, BitString::from_value(number, z));
        const std::uint64_t real = r.first >= deg ? 0 : std::min(r.last, deg - 1) - r.first + 1;
        if (real > 0 && real < size) {
          ++short_sectors;
          short_is_last_nonempty = r.last >= deg - 1;
        }
      }
      ASSERT_LE(short_sectors, 1) << deg << ' ' << z;
      ASSERT_TRUE(short_is_last_nonempty);
    }
  }
}
