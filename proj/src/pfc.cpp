#include "trsc/pfc.hpp"

#include <stdexcept>
#include <string>

namespace trsc {

namespace {

void check_seg_exp(int n, int s) {
  if (s < 1 || s > n - 1)
    throw std::invalid_argument("pfc: seg_exp " + std::to_string(s) +
                                " outside [1, width-1] for width " + std::to_string(n));
}

}  // namespace

PfcCode compress(const BinaryOperand& b, int seg_exp) {
  check_seg_exp(b.width, seg_exp);
  const int low_width = b.width - seg_exp;
  const std::uint32_t top = b.value >> low_width;
  const std::uint32_t low = b.value & ((std::uint32_t{1} << low_width) - 1);

  // The seed is the width-s SN of the top bits minus its constant-0 last bit.
  const StochasticSeq top_sn = encode_sn(BinaryOperand(top, seg_exp));
  const std::uint32_t seg_len = std::uint32_t{1} << seg_exp;
  BitSeq seed(seg_len - 1);
  for (std::uint32_t j = 0; j + 1 < seg_len; ++j) seed.set(j, top_sn.bits.get(j));
  return {std::move(seed), low, b.width, seg_exp};
}

StochasticSeq decompress(const PfcCode& code) {
  const std::uint32_t seg_len = code.segment_len();
  const std::uint32_t segments = code.segment_count();
  BitSeq bits(std::uint64_t{seg_len} * segments);
  for (std::uint32_t m = 0; m < segments; ++m) {
    const std::uint64_t base = std::uint64_t{m} * seg_len;
    for (std::uint32_t j = 0; j + 1 < seg_len; ++j)
      bits.set(base + j, code.seed.get(j));
    bits.set(base + seg_len - 1, lsb_bit(code, m));
  }
  return {std::move(bits), code.width};
}

int lsb_bit(const PfcCode& code, std::uint32_t m) {
  if (m >= code.segment_count()) throw std::out_of_range("lsb_bit: segment index out of range");
  return sn_bit(BinaryOperand(code.low_bits, code.width - code.seg_exp), m);
}

Quadruple make_quadruple(const PfcCode& a_code, const BinaryOperand& b) {
  if (a_code.width != b.width)
    throw std::invalid_argument("make_quadruple: operand width mismatch");
  const std::uint32_t seg_len = a_code.segment_len();
  return {a_code.seed, a_code.low_bits, b.value / seg_len, b.value % seg_len,
          a_code.width, a_code.seg_exp};
}

int stored_bits(int n, int s) {
  check_seg_exp(n, s);
  return ((1 << s) - 1) + (n - s);
}

double compression_ratio(int n, int s) {
  return static_cast<double>(std::uint64_t{1} << n) / stored_bits(n, s);
}

}  // namespace trsc
