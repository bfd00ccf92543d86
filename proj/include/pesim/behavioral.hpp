#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Bit-true reference models for the priority encoders. These are the golden
// oracles the switch-level netlists are verified against; they must stay
// free of any simulator dependency.

namespace pesim {

// Fixed-width bit vector. Index 0 carries the highest priority. String form
// prints index 0 leftmost; integer form maps index i to bit i of the value.
struct PEVector {
  std::vector<std::uint8_t> bits;

  PEVector() = default;
  explicit PEVector(std::size_t width) : bits(width, 0) {}

  std::size_t width() const { return bits.size(); }

  static PEVector from_uint(std::uint64_t value, std::size_t width) {
    if (width > 64) throw std::invalid_argument("PEVector: width exceeds 64");
    PEVector v(width);
    for (std::size_t i = 0; i < width; ++i)
      v.bits[i] = static_cast<std::uint8_t>((value >> i) & 1u);
    return v;
  }

  static PEVector from_string(const std::string& text) {
    PEVector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '0') v.bits[i] = 0;
      else if (text[i] == '1') v.bits[i] = 1;
      else throw std::invalid_argument("PEVector: invalid character in bit string");
    }
    return v;
  }

  std::uint64_t to_uint() const {
    if (width() > 64) throw std::logic_error("PEVector: too wide for uint64");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < width(); ++i)
      if (bits[i]) value |= std::uint64_t{1} << i;
    return value;
  }

  std::string to_string() const {
    std::string s(width(), '0');
    for (std::size_t i = 0; i < width(); ++i)
      if (bits[i]) s[i] = '1';
    return s;
  }

  bool any() const {
    for (auto b : bits)
      if (b) return true;
    return false;
  }

  bool operator==(const PEVector&) const = default;
};

// Pure priority function: OP_i = IP_i AND no higher-priority input set.
// At most one output bit is ever 1.
inline PEVector pe_general(const PEVector& ip) {
  if (ip.width() == 0) throw std::invalid_argument("pe_general: empty input");
  PEVector op(ip.width());
  std::uint8_t clear = 1;  // all of IP_0..IP_{i-1} are 0
  for (std::size_t i = 0; i < ip.width(); ++i) {
    op.bits[i] = static_cast<std::uint8_t>(ip.bits[i] & clear);
    clear &= static_cast<std::uint8_t>(1 - ip.bits[i]);
  }
  return op;
}

struct PE8Result {
  PEVector op;      // width 8, one-hot or all-zero
  int la_inter = 0; // disable seen by the low-priority half
  int la_out = 0;   // disable handed to the next stage

  bool operator==(const PE8Result&) const = default;
};

// 8-bit block with active-low-enable look-ahead: la = 1 forces all outputs
// to 0. The low half is gated by la_inter = la OR IP_0..IP_3 rather than by
// the raw chain, and la_out = la OR any input.
inline PE8Result pe8(const PEVector& ip, int la) {
  if (ip.width() != 8) throw std::invalid_argument("pe8: input width must be 8");
  if (la != 0 && la != 1) throw std::invalid_argument("pe8: la must be 0 or 1");
  const auto b = [&](int i) { return static_cast<int>(ip.bits[static_cast<std::size_t>(i)]); };
  const int nla = 1 - la;

  PE8Result r;
  r.op = PEVector(8);
  r.op.bits[0] = static_cast<std::uint8_t>(nla & b(0));
  r.op.bits[1] = static_cast<std::uint8_t>(nla & (1 - b(0)) & b(1));
  r.op.bits[2] = static_cast<std::uint8_t>(nla & (1 - b(0)) & (1 - b(1)) & b(2));
  r.op.bits[3] = static_cast<std::uint8_t>(nla & (1 - b(0)) & (1 - b(1)) & (1 - b(2)) & b(3));

  r.la_inter = la | b(0) | b(1) | b(2) | b(3);
  const int nli = 1 - r.la_inter;
  r.op.bits[4] = static_cast<std::uint8_t>(nli & b(4));
  r.op.bits[5] = static_cast<std::uint8_t>(nli & (1 - b(4)) & b(5));
  r.op.bits[6] = static_cast<std::uint8_t>(nli & (1 - b(4)) & (1 - b(5)) & b(6));
  r.op.bits[7] = static_cast<std::uint8_t>(nli & (1 - b(4)) & (1 - b(5)) & (1 - b(6)) & b(7));

  r.la_out = la | b(0) | b(1) | b(2) | b(3) | b(4) | b(5) | b(6) | b(7);
  return r;
}

// Wide encoder built from 8-bit blocks. Block k's disable is the OR of all
// raw inputs of blocks 0..k-1 (parallel look-ahead, not a chained ripple),
// so the result equals pe_general over the whole vector.
inline PEVector cascade(const PEVector& ip) {
  if (ip.width() == 0 || ip.width() % 8 != 0)
    throw std::invalid_argument("cascade: width must be a positive multiple of 8");
  PEVector out(ip.width());
  int higher_any = 0;
  for (std::size_t block = 0; block * 8 < ip.width(); ++block) {
    PEVector slice(8);
    for (std::size_t i = 0; i < 8; ++i)
      slice.bits[i] = ip.bits[block * 8 + i];
    const PE8Result r = pe8(slice, higher_any);
    for (std::size_t i = 0; i < 8; ++i)
      out.bits[block * 8 + i] = r.op.bits[i];
    if (slice.any()) higher_any = 1;
  }
  return out;
}

}  // namespace pesim
