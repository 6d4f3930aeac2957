#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trsc/ldsc.hpp"
#include "trsc/pfc.hpp"
#include "trsc/rtm.hpp"

namespace trsc {

// Engine configuration. Parallelism P is the segment length and the number of
// nanowires written per transposed store; the output-logic power column comes
// from the synthesized per-parallelism variants.
struct MacConfig {
  int width = 8;
  int parallelism = 64;
  bool seed_compressed = false;
  bool signed_mode = false;

  int tree_adder_latency_cycles = 3;
  int tree_extra_pass_cycles = 2;
  int tree_pass_inputs = 128;  // TR results absorbed per adder pass
  int output_cycles_per_segment = 1;
  int port_alignment_cycles = 4;
  double e_a_per_add_pj = 0.494;  // calibrated once against the 44.3 pJ multiply
  double clock_ns = 1.0;
  RtmConfig rtm;

  int seg_exp() const;
  double output_power_mw() const;
  std::uint32_t max_segments() const {
    return std::uint32_t{1} << (width - seg_exp());
  }
  void validate() const;
};

struct MacResult {
  std::uint32_t count = 0;
  double scaled_value = 0.0;
  CostLedger ledger;
  std::uint32_t segments_emitted = 0;
  // Set when the seed-compressed layout costs more cycles than the plain
  // pipeline would (always the case for small counters).
  bool compressed_cycle_overhead = false;
};

struct OperandPair {
  BinaryOperand a;
  BinaryOperand b;
};

struct SignedPair {
  BinaryOperand a;
  BinaryOperand b;
  int sign = 1;
};

struct DotResult {
  long long value = 0;
  CostLedger ledger;
  std::uint64_t segments = 0;
  std::uint64_t parts = 0;
  std::uint64_t slots = 0;
};

// One TR-assisted multiplication: output computation of the full-1 segments,
// mixed computation of the bEdge segment, transposed store, TR drain, tree
// reduction. Count is bit-exact against mul_reference.
MacResult multiply(const BinaryOperand& a, const BinaryOperand& b, const MacConfig& cfg);

// Storage-optimized variant: the seed is stored once and its TR result is
// routed `counter` times into the tree adder.
MacResult multiply_seed_compressed(const BinaryOperand& a, const BinaryOperand& b,
                                   const MacConfig& cfg);

// k multiplications on parallel computing units feeding one adder tree
// (the fused multiply-accumulate latency model). Segments pack five per part.
struct BatchResult {
  std::uint64_t count = 0;
  CostLedger ledger;
  std::uint64_t segments = 0;
  std::uint64_t parts = 0;
};
BatchResult accumulate_batch(std::span<const OperandPair> pairs, const MacConfig& cfg);

// Streaming dot product: segments from successive products fill the same part
// column, writes pipeline behind segment generation at one slot per cycle,
// ping-pong TR drains fire when the DBC fills. Positive and negative products
// accumulate on separate track halves and meet at the final signed adder.
DotResult dot_product(std::span<const SignedPair> pairs, const MacConfig& cfg);

// Exact sum with adder-tree accounting: size-1 additions, one base pass plus
// tree_extra_pass_cycles per additional pass.
std::uint64_t tree_add(std::span<const std::uint32_t> counts, CostLedger& ledger,
                       const MacConfig& cfg);

// Bit-serial APC reference cost model: the full 2^n-cycle scan regardless of
// operand values.
MacResult baseline_apc_multiply(const BinaryOperand& a, const BinaryOperand& b,
                                const MacConfig& cfg);
DotResult baseline_apc_dot(std::span<const SignedPair> pairs, const MacConfig& cfg);

}  // namespace trsc
