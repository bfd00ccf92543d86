#include "pesim/behavioral.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <random>

namespace {

using pesim::PEVector;

// Independent oracle: the encoder output is one-hot at the lowest set index,
// or all-zero. Deliberately not written as a product chain.
PEVector min_index_oracle(const PEVector& ip) {
  PEVector op(ip.width());
  for (std::size_t i = 0; i < ip.width(); ++i) {
    if (ip.bits[i]) {
      op.bits[i] = 1;
      break;
    }
  }
  return op;
}

TEST(PEVector, StringAndIntegerRoundTrip) {
  const PEVector v = PEVector::from_string("00100100");
  EXPECT_EQ(v.width(), 8u);
  EXPECT_EQ(v.bits[2], 1);
  EXPECT_EQ(v.bits[5], 1);
  EXPECT_EQ(v.to_string(), "00100100");
  EXPECT_EQ(v.to_uint(), 0x24u);
  EXPECT_EQ(PEVector::from_uint(0x24, 8), v);
  EXPECT_EQ(PEVector::from_uint(0x24, 8).to_string(), "00100100");
}

TEST(PEVector, RejectsBadInput) {
  EXPECT_THROW(PEVector::from_string("01a"), std::invalid_argument);
  EXPECT_THROW(PEVector::from_uint(0, 65), std::invalid_argument);
}

TEST(PeGeneral, FrozenExamples) {
  EXPECT_EQ(pesim::pe_general(PEVector::from_string("00100100")).to_string(), "00100000");
  EXPECT_EQ(pesim::pe_general(PEVector::from_string("10000001")).to_string(), "10000000");
  EXPECT_EQ(pesim::pe_general(PEVector::from_string("00000000")).to_string(), "00000000");
  EXPECT_EQ(pesim::pe_general(PEVector::from_string("11111111")).to_string(), "10000000");
}

TEST(PeGeneral, MatchesMinIndexOracleExhaustively) {
  for (std::size_t width = 1; width <= 10; ++width) {
    const std::uint64_t cases = std::uint64_t{1} << width;
    for (std::uint64_t v = 0; v < cases; ++v) {
      const PEVector ip = PEVector::from_uint(v, width);
      EXPECT_EQ(pesim::pe_general(ip), min_index_oracle(ip))
          << "width " << width << " input " << ip.to_string();
    }
  }
}

TEST(PeGeneral, MatchesMinIndexOracleOnWideRandomVectors) {
  std::mt19937_64 gen(0x5eedu);
  for (int i = 0; i < 64; ++i) {
    const std::size_t width = 17 + static_cast<std::size_t>(gen() % 48);
    PEVector ip(width);
    for (auto& b : ip.bits) b = static_cast<std::uint8_t>(gen() & 1u);
    EXPECT_EQ(pesim::pe_general(ip), min_index_oracle(ip)) << ip.to_string();
  }
}

TEST(PeGeneral, RejectsEmptyInput) {
  EXPECT_THROW(pesim::pe_general(PEVector{}), std::invalid_argument);
}

TEST(Pe8, FrozenExample) {
  const auto r = pesim::pe8(PEVector::from_string("00001000"), 0);
  EXPECT_EQ(r.op.to_string(), "00001000");
  EXPECT_EQ(r.la_inter, 0);
  EXPECT_EQ(r.la_out, 1);
}

TEST(Pe8, DisableForcesAllZero) {
  for (std::uint32_t v = 0; v < 256; ++v) {
    const auto r = pesim::pe8(PEVector::from_uint(v, 8), 1);
    EXPECT_EQ(r.op.to_string(), "00000000") << "input " << v;
    EXPECT_EQ(r.la_inter, 1);
    EXPECT_EQ(r.la_out, 1);
  }
}

TEST(Pe8, EnabledMatchesPeGeneralExhaustively) {
  for (std::uint32_t v = 0; v < 256; ++v) {
    const PEVector ip = PEVector::from_uint(v, 8);
    const auto r = pesim::pe8(ip, 0);
    EXPECT_EQ(r.op, pesim::pe_general(ip)) << "input " << ip.to_string();
    EXPECT_EQ(r.la_inter, (v & 0x0F) != 0 ? 1 : 0);
    EXPECT_EQ(r.la_out, v != 0 ? 1 : 0);
  }
}

TEST(Pe8, LaInterDecomposition) {
  // The low half must behave as a 4-bit encoder gated by la_inter alone.
  for (std::uint32_t v = 0; v < 256; ++v) {
    for (int la = 0; la <= 1; ++la) {
      const PEVector ip = PEVector::from_uint(v, 8);
      const auto r = pesim::pe8(ip, la);
      PEVector low(4);
      for (std::size_t i = 0; i < 4; ++i) low.bits[i] = ip.bits[4 + i];
      const PEVector expect_low =
          r.la_inter ? PEVector(4) : pesim::pe_general(low);
      for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(r.op.bits[4 + i], expect_low.bits[i])
            << "input " << ip.to_string() << " la " << la;
    }
  }
}

TEST(Pe8, OutputIsAlwaysOneHotOrZero) {
  for (std::uint32_t v = 0; v < 256; ++v) {
    for (int la = 0; la <= 1; ++la) {
      const auto r = pesim::pe8(PEVector::from_uint(v, 8), la);
      int ones = 0;
      for (auto b : r.op.bits) ones += b;
      EXPECT_LE(ones, 1) << "input " << v << " la " << la;
    }
  }
}

TEST(Pe8, RejectsBadArguments) {
  EXPECT_THROW(pesim::pe8(PEVector(4), 0), std::invalid_argument);
  EXPECT_THROW(pesim::pe8(PEVector(8), 2), std::invalid_argument);
}

TEST(Cascade, SixteenBitMatchesPeGeneralExhaustively) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << 16); ++v) {
    const PEVector ip = PEVector::from_uint(v, 16);
    EXPECT_EQ(pesim::cascade(ip), pesim::pe_general(ip)) << ip.to_string();
  }
}

TEST(Cascade, WideWidthsMatchPeGeneralOnRandomVectors) {
  std::mt19937_64 gen(0xca5cadeu);
  for (const std::size_t width : {8u, 24u, 32u, 64u}) {
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t raw = gen();
      const std::uint64_t mask =
          width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
      const PEVector ip = PEVector::from_uint(raw & mask, width);
      EXPECT_EQ(pesim::cascade(ip), pesim::pe_general(ip)) << ip.to_string();
    }
  }
}

TEST(Cascade, WalkingOnes) {
  for (const std::size_t width : {16u, 32u, 64u}) {
    for (std::size_t i = 0; i < width; ++i) {
      PEVector ip(width);
      ip.bits[i] = 1;
      EXPECT_EQ(pesim::cascade(ip), ip) << "width " << width << " bit " << i;
    }
  }
}

TEST(Cascade, RejectsBadWidths) {
  EXPECT_THROW(pesim::cascade(PEVector{}), std::invalid_argument);
  EXPECT_THROW(pesim::cascade(PEVector(12)), std::invalid_argument);
}

}  // namespace
