#pragma once

#include <cstdint>

#include "trsc/bitseq.hpp"
#include "trsc/ldsc.hpp"

namespace trsc {

// Pseudo-fractal compressed SN: the repeated segment prefix (seed) stored
// once, plus the binary low bits whose SN expansion supplies each segment's
// last bit. Segment length is P = 2^seg_exp; stored size is (P-1) + (n-s).
struct PfcCode {
  BitSeq seed;             // P-1 bits
  std::uint32_t low_bits;  // n-s bit field
  int width;
  int seg_exp;

  std::uint32_t segment_len() const { return std::uint32_t{1} << seg_exp; }
  std::uint32_t segment_count() const { return std::uint32_t{1} << (width - seg_exp); }
  std::uint64_t seed_word() const { return seed.as_word(); }
};

// Per-multiplication control tuple: the SN operand's compressed form plus the
// UN operand split into full-1 segment count and mixed-segment edge.
struct Quadruple {
  BitSeq seed;
  std::uint32_t slsb;
  std::uint32_t counter;  // floor(b / P): number of full-1 UN segments
  std::uint32_t bedge;    // b mod P: ones in the mixed segment
  int width;
  int seg_exp;
};

PfcCode compress(const BinaryOperand& b, int seg_exp);
StochasticSeq decompress(const PfcCode& code);

// Last bit of segment m: the SN 1-bit generator, sn_bit of the low-bits
// operand at position m.
int lsb_bit(const PfcCode& code, std::uint32_t m);

Quadruple make_quadruple(const PfcCode& a_code, const BinaryOperand& b);

int stored_bits(int n, int s);
double compression_ratio(int n, int s);

// Streaming segment-LSB generator with the running ones count, so output
// computation can compare it against the UN counter and stop.
class LsbStream {
 public:
  explicit LsbStream(const PfcCode& code) : code_(&code) {}

  bool done() const { return next_ == code_->segment_count(); }
  std::uint32_t emitted() const { return next_; }
  std::uint32_t ones() const { return ones_; }

  int next() {
    const int bit = lsb_bit(*code_, next_);
    ++next_;
    ones_ += static_cast<std::uint32_t>(bit);
    return bit;
  }

 private:
  const PfcCode* code_;
  std::uint32_t next_ = 0;
  std::uint32_t ones_ = 0;
};

}  // namespace trsc
