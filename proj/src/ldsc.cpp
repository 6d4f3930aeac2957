#include "trsc/ldsc.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace trsc {

BinaryOperand::BinaryOperand(std::uint32_t v, int n) : value(v), width(n) {
  if (n < kMinWidth || n > kMaxWidth)
    throw std::invalid_argument("BinaryOperand: width " + std::to_string(n) +
                                " outside [1,16]");
  if (v >= (std::uint32_t{1} << n))
    throw std::invalid_argument("BinaryOperand: value " + std::to_string(v) +
                                " does not fit in " + std::to_string(n) + " bits");
}

StochasticSeq encode_sn(const BinaryOperand& b) {
  const std::uint32_t len = b.seq_len();
  BitSeq bits(len);
  for (std::uint32_t j = 0; j + 1 < len; ++j) {
    const int k = std::countr_zero(j + 1);
    bits.set(j, b.bit(k));
  }
  return {std::move(bits), b.width};
}

UnarySeq encode_un(const BinaryOperand& b) {
  BitSeq bits(b.seq_len());
  for (std::uint32_t j = 0; j < b.value; ++j) bits.set(j, 1);
  return {std::move(bits), b.width};
}

int sn_bit(const BinaryOperand& b, std::uint32_t j) {
  const std::uint32_t len = b.seq_len();
  if (j >= len) throw std::out_of_range("sn_bit: index out of range");
  if (j == len - 1) return 0;
  return b.bit(std::countr_zero(j + 1));
}

std::uint32_t mul_reference(const BinaryOperand& a, const BinaryOperand& b) {
  if (a.width != b.width)
    throw std::invalid_argument("mul_reference: operand width mismatch");
  const BitSeq prod = encode_sn(a).bits & encode_un(b).bits;
  return static_cast<std::uint32_t>(prod.popcount());
}

std::vector<int> index_map(int n) {
  if (n < kMinWidth || n > kMaxWidth)
    throw std::invalid_argument("index_map: width outside [1,16]");
  const std::uint64_t len = std::uint64_t{1} << n;
  std::vector<int> witness(len - 1, -1);
  for (int k = 0; k < n; ++k) {
    const std::uint64_t step = std::uint64_t{1} << (k + 1);
    const std::uint64_t reps = len >> (k + 1);
    for (std::uint64_t i = 0; i < reps; ++i) {
      const std::uint64_t j = step * i + (std::uint64_t{1} << k) - 1;
      if (witness[j] != -1)
        throw std::logic_error("index_map: duplicate cover at " + std::to_string(j));
      witness[j] = k;
    }
  }
  for (std::uint64_t j = 0; j + 1 < len; ++j)
    if (witness[j] == -1)
      throw std::logic_error("index_map: uncovered index " + std::to_string(j));
  return witness;
}

}  // namespace trsc
