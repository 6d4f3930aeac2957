#pragma once

#include <cstdint>
#include <vector>

#include "trsc/bitseq.hpp"

namespace trsc {

inline constexpr int kMinWidth = 1;
inline constexpr int kMaxWidth = 16;

// An n-bit unsigned operand. Bit indexing convention used throughout: B_0 is
// the most significant bit (weight 2^(n-1)), B_k has weight 2^(n-1-k).
struct BinaryOperand {
  std::uint32_t value;
  int width;

  BinaryOperand(std::uint32_t v, int n);

  std::uint32_t seq_len() const { return std::uint32_t{1} << width; }
  int bit(int k) const { return static_cast<int>((value >> (width - 1 - k)) & 1u); }
};

// Low-discrepancy stochastic number: length-2^n bit vector with popcount equal
// to the source value and ones spread by the pseudo-fractal index map.
struct StochasticSeq {
  BitSeq bits;
  int width;
};

// Unary number: `value` ones followed by zeros.
struct UnarySeq {
  BitSeq bits;
  int width;
};

StochasticSeq encode_sn(const BinaryOperand& b);
UnarySeq encode_un(const BinaryOperand& b);

// SN bit at position j without materializing the sequence (the hard-wire
// form): j = 2^(k+1)*i + 2^k - 1 has the unique solution k = ctz(j+1), and
// position 2^n - 1 is covered by no (k, i) and is constant 0.
int sn_bit(const BinaryOperand& b, std::uint32_t j);

// Ground-truth multiplier: popcount(encode_sn(a) AND encode_un(b)).
std::uint32_t mul_reference(const BinaryOperand& a, const BinaryOperand& b);

// Witness that {2^(k+1)*i + 2^k - 1} partitions {0, ..., 2^n - 2}: entry j is
// the unique k covering index j. Throws if a duplicate or a gap is found.
std::vector<int> index_map(int n);

}  // namespace trsc
