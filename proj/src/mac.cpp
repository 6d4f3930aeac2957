#include "trsc/mac.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace trsc {

int MacConfig::seg_exp() const { return std::countr_zero(static_cast<unsigned>(parallelism)); }

double MacConfig::output_power_mw() const {
  switch (parallelism) {
    case 4: return 0.1249;
    case 8: return 0.1108;
    case 16: return 0.0972;
    case 32: return 0.0848;
    case 64: return 0.0702;
  }
  throw std::invalid_argument("MacConfig: no output logic variant for parallelism " +
                              std::to_string(parallelism));
}

void MacConfig::validate() const {
  if (parallelism != 4 && parallelism != 8 && parallelism != 16 && parallelism != 32 &&
      parallelism != 64)
    throw std::invalid_argument("MacConfig: parallelism must be one of 4/8/16/32/64");
  if (width < kMinWidth || width > kMaxWidth)
    throw std::invalid_argument("MacConfig: width outside [1,16]");
  if (seg_exp() > width - 1)
    throw std::invalid_argument("MacConfig: parallelism " + std::to_string(parallelism) +
                                " too large for width " + std::to_string(width));
  if (tree_pass_inputs < 2) throw std::invalid_argument("MacConfig: tree_pass_inputs < 2");
  if (tree_adder_latency_cycles < 0 || tree_extra_pass_cycles < 0 ||
      output_cycles_per_segment < 0 || port_alignment_cycles < 0)
    throw std::invalid_argument("MacConfig: negative latency constant");
  rtm.validate();
}

namespace {

struct SegmentPlan {
  std::vector<std::uint64_t> segs;  // each `parallelism` bits wide
  std::uint32_t counter = 0;
  std::uint32_t bedge = 0;
  std::uint64_t seed_word = 0;
  PfcCode code;
};

SegmentPlan plan_segments(const BinaryOperand& a, const BinaryOperand& b,
                          const MacConfig& cfg) {
  if (a.width != cfg.width || b.width != cfg.width)
    throw std::invalid_argument("mac: operand width does not match configuration");
  SegmentPlan plan;
  plan.code = compress(a, cfg.seg_exp());
  const Quadruple quad = make_quadruple(plan.code, b);
  plan.counter = quad.counter;
  plan.bedge = quad.bedge;
  plan.seed_word = plan.code.seed_word();
  const int p = cfg.parallelism;

  // Output computation: counter full-1 segments, each the seed plus the next
  // streamed LSB. Mixed computation: seed AND the bEdge prefix, LSB constant 0.
  // When bEdge is 0 but counter is not, termination is still detected one
  // segment late and an all-zero segment goes out.
  LsbStream lsb(plan.code);
  plan.segs.reserve(plan.counter + 1);
  for (std::uint32_t m = 0; m < plan.counter; ++m)
    plan.segs.push_back(plan.seed_word |
                        (static_cast<std::uint64_t>(lsb.next()) << (p - 1)));
  if (b.value > 0)
    plan.segs.push_back(plan.bedge > 0
                            ? plan.seed_word & ((std::uint64_t{1} << plan.bedge) - 1)
                            : std::uint64_t{0});
  return plan;
}

// Shared placement engine: packs writes five to a part, walks even part
// indices before odd ones, and ping-pong drains when the DBC fills.
class Placer {
 public:
  Placer(const MacConfig& cfg, bool bit_mode)
      : cfg_(cfg), dbc_(cfg.rtm, cfg.parallelism), bit_mode_(bit_mode) {
    for (int p = 0; p < dbc_.parts(); p += 2) order_.push_back(p);
    for (int p = 1; p < dbc_.parts(); p += 2) order_.push_back(p);
  }

  int begin_region() {
    close_part(false);
    region_sums_.push_back(0);
    region_parts_.push_back(0);
    return static_cast<int>(region_sums_.size()) - 1;
  }

  void add_segment(std::uint64_t bits) {
    ensure_slot();
    dbc_.write_transposed(cur_part(), bits, scratch_);
    ++transposed_writes_;
    ++slots_;
  }

  void add_bit(int bit) {
    ensure_slot();
    dbc_.write_bit(0, cur_part(), bit, scratch_);
    ++bit_writes_;
    ++slots_;
  }

  // Close the open part: zero-fill either with real serial writes (the
  // seed/AND rule that a part must receive all five stores) or with forced
  // stores during the drain window.
  void close_part(bool real_writes) {
    if (next_ == 0 || dbc_.fill(cur_part()) == 0) return;
    const int rest = cfg_.rtm.valid_per_part - dbc_.fill(cur_part());
    if (rest <= 0) return;
    if (real_writes) {
      for (int i = 0; i < rest; ++i) {
        dbc_.write_bit(0, cur_part(), 0, scratch_);
        ++bit_writes_;
      }
    } else {
      dbc_.pad_part(cur_part(), scratch_);
      forced_pads_ += static_cast<std::uint64_t>(rest);
    }
    slots_ += static_cast<std::uint64_t>(rest);
  }

  void finish(bool real_pad_writes = false) {
    close_part(real_pad_writes);
    drain();
  }

  std::uint64_t region_sum(int r) const { return region_sums_[r]; }
  std::uint64_t region_parts(int r) const { return region_parts_[r]; }
  std::uint64_t sum() const {
    std::uint64_t s = 0;
    for (std::uint64_t r : region_sums_) s += r;
    return s;
  }
  std::uint64_t parts_used() const { return parts_total_; }
  std::uint64_t waves() const { return waves_; }
  std::uint64_t slots() const { return slots_; }
  std::uint64_t transposed_writes() const { return transposed_writes_; }
  std::uint64_t bit_writes() const { return bit_writes_; }
  std::uint64_t forced_pads() const { return forced_pads_; }
  std::uint64_t tree_inputs() const { return tree_inputs_; }

 private:
  int cur_part() const { return order_[next_ - 1]; }

  void ensure_slot() {
    if (region_sums_.empty()) begin_region();
    if (next_ > 0 && dbc_.fill(cur_part()) < cfg_.rtm.valid_per_part) return;
    if (next_ == static_cast<int>(order_.size())) drain();
    ++next_;
    used_region_.push_back(static_cast<int>(region_sums_.size()) - 1);
    ++parts_total_;
    region_parts_.back() += 1;
  }

  void drain() {
    if (next_ == 0) return;
    std::vector<int> evens, odds;
    for (int i = 0; i < next_; ++i)
      (order_[i] % 2 == 0 ? evens : odds).push_back(order_[i]);
    for (const auto& wave : {evens, odds}) {
      if (wave.empty()) continue;
      ++waves_;
      if (bit_mode_) {
        for (std::size_t i = 0; i < wave.size(); ++i) {
          const int idx = index_in_order(wave[i]);
          region_sums_[used_region_[idx]] +=
              static_cast<std::uint64_t>(dbc_.transverse_read(0, wave[i]));
        }
        tree_inputs_ += wave.size();
      } else {
        const auto counts = dbc_.tr_wave(wave, scratch_);
        for (int t = 0; t < dbc_.tracks(); ++t)
          for (std::size_t i = 0; i < wave.size(); ++i) {
            const int idx = index_in_order(wave[i]);
            region_sums_[used_region_[idx]] += static_cast<std::uint64_t>(counts[t][i]);
          }
        tree_inputs_ += wave.size() * static_cast<std::uint64_t>(dbc_.tracks());
      }
      for (int p : wave) dbc_.clear_part(p);
    }
    next_ = 0;
    used_region_.clear();
  }

  int index_in_order(int part) const {
    for (int i = 0; i < next_; ++i)
      if (order_[i] == part) return i;
    throw std::logic_error("Placer: part not in use");
  }

  const MacConfig& cfg_;
  RtmDbc dbc_;
  bool bit_mode_;
  CostLedger scratch_;
  std::vector<int> order_;
  int next_ = 0;                   // parts consumed since last drain
  std::vector<int> used_region_;   // region of order_[i] for i < next_
  std::vector<std::uint64_t> region_sums_;
  std::vector<std::uint64_t> region_parts_;
  std::uint64_t parts_total_ = 0;
  std::uint64_t waves_ = 0;
  std::uint64_t slots_ = 0;
  std::uint64_t transposed_writes_ = 0;
  std::uint64_t bit_writes_ = 0;
  std::uint64_t forced_pads_ = 0;
  std::uint64_t tree_inputs_ = 0;
};

std::uint64_t tree_passes(std::uint64_t inputs, const MacConfig& cfg) {
  if (inputs <= 1) return inputs;
  return (inputs + cfg.tree_pass_inputs - 1) / cfg.tree_pass_inputs;
}

void charge_tree(std::uint64_t inputs, CostLedger& ledger, const MacConfig& cfg) {
  if (inputs <= 1) return;
  const std::uint64_t passes = tree_passes(inputs, cfg);
  ledger.charge(OpCat::Adder, inputs - 1,
                static_cast<std::uint64_t>(cfg.tree_adder_latency_cycles) +
                    (passes - 1) * cfg.tree_extra_pass_cycles,
                static_cast<double>(inputs - 1) * cfg.e_a_per_add_pj);
}

double output_energy(std::uint64_t segments, const MacConfig& cfg) {
  return static_cast<double>(segments) * cfg.output_cycles_per_segment *
         cfg.output_power_mw() * cfg.clock_ns;
}

struct StreamRun {
  std::uint64_t sum = 0;
  CostLedger ledger;
  std::uint64_t segments = 0;
  std::uint64_t parts = 0;
  std::uint64_t slots = 0;
};

// Pipelined stream accounting: one slot per cycle, generation and shifting
// hidden behind the write stream.
StreamRun run_stream(std::span<const SignedPair> pairs, int want_sign, const MacConfig& cfg) {
  StreamRun run;
  Placer placer(cfg, /*bit_mode=*/false);
  std::uint64_t seg_total = 0;
  for (const SignedPair& sp : pairs) {
    if (sp.sign != want_sign) continue;
    const SegmentPlan plan = plan_segments(sp.a, sp.b, cfg);
    for (std::uint64_t seg : plan.segs) placer.add_segment(seg);
    seg_total += plan.segs.size();
  }
  if (seg_total == 0) return run;
  placer.finish();

  run.sum = placer.sum();
  run.segments = seg_total;
  run.parts = placer.parts_used();
  run.slots = placer.slots();
  const RtmConfig& rtm = cfg.rtm;
  run.ledger.charge(OpCat::OutputLogic, seg_total, 0, output_energy(seg_total, cfg));
  run.ledger.charge(OpCat::Shift, seg_total, 0, static_cast<double>(seg_total) * rtm.shift_energy_pj);
  run.ledger.charge(OpCat::Write, seg_total + placer.forced_pads(), run.slots,
                    static_cast<double>(seg_total + placer.forced_pads()) * rtm.write_energy_pj);
  run.ledger.charge(OpCat::Tr, placer.tree_inputs(),
                    placer.waves() * static_cast<std::uint64_t>(rtm.tr_cycles),
                    static_cast<double>(placer.tree_inputs()) * rtm.tr_energy_pj);
  charge_tree(placer.tree_inputs(), run.ledger, cfg);
  return run;
}

}  // namespace

BatchResult accumulate_batch(std::span<const OperandPair> pairs, const MacConfig& cfg) {
  cfg.validate();
  BatchResult res;
  Placer placer(cfg, /*bit_mode=*/false);
  std::uint64_t seg_total = 0, seg_max = 0;
  for (const OperandPair& pr : pairs) {
    const SegmentPlan plan = plan_segments(pr.a, pr.b, cfg);
    for (std::uint64_t seg : plan.segs) placer.add_segment(seg);
    seg_total += plan.segs.size();
    seg_max = std::max(seg_max, static_cast<std::uint64_t>(plan.segs.size()));
  }
  if (seg_total == 0) return res;
  placer.finish();

  res.count = placer.sum();
  res.segments = seg_total;
  res.parts = placer.parts_used();
  const RtmConfig& rtm = cfg.rtm;
  CostLedger& led = res.ledger;
  // Units run in parallel: cycle depth follows the longest unit, operation
  // counts and energy follow the whole batch.
  led.charge(OpCat::OutputLogic, seg_total,
             seg_max * static_cast<std::uint64_t>(cfg.output_cycles_per_segment),
             output_energy(seg_total, cfg));
  led.charge(OpCat::Shift, seg_total, seg_max * static_cast<std::uint64_t>(rtm.shift_cycles),
             static_cast<double>(seg_total) * rtm.shift_energy_pj);
  led.charge(OpCat::Write, seg_total + placer.forced_pads(),
             seg_max * static_cast<std::uint64_t>(rtm.write_cycles),
             static_cast<double>(seg_total + placer.forced_pads()) * rtm.write_energy_pj);
  led.charge(OpCat::Tr, placer.tree_inputs(),
             placer.waves() * static_cast<std::uint64_t>(rtm.tr_cycles),
             static_cast<double>(placer.tree_inputs()) * rtm.tr_energy_pj);
  charge_tree(placer.tree_inputs(), led, cfg);
  led.charge(OpCat::Align, 0, static_cast<std::uint64_t>(cfg.port_alignment_cycles), 0.0);
  return res;
}

MacResult multiply(const BinaryOperand& a, const BinaryOperand& b, const MacConfig& cfg) {
  const OperandPair pair{a, b};
  BatchResult batch = accumulate_batch({&pair, 1}, cfg);
  MacResult res;
  res.count = static_cast<std::uint32_t>(batch.count);
  res.scaled_value = static_cast<double>(batch.count) /
                     static_cast<double>(std::uint64_t{1} << cfg.width);
  res.ledger = std::move(batch.ledger);
  res.segments_emitted = static_cast<std::uint32_t>(batch.segments);
  return res;
}

MacResult multiply_seed_compressed(const BinaryOperand& a, const BinaryOperand& b,
                                   const MacConfig& cfg) {
  cfg.validate();
  MacResult res;
  const SegmentPlan plan = plan_segments(a, b, cfg);
  const std::uint32_t segs = static_cast<std::uint32_t>(plan.segs.size());
  if (segs == 0) return res;
  const int p = cfg.parallelism;
  const RtmConfig& rtm = cfg.rtm;

  Placer placer(cfg, /*bit_mode=*/true);
  // Seed once, written horizontally; every slot of its parts must be stored
  // so the TR result stays valid.
  const int seed_region = placer.begin_region();
  for (int j = 0; j < p - 1; ++j) placer.add_bit(static_cast<int>((plan.seed_word >> j) & 1));
  placer.close_part(/*real_writes=*/true);
  // Counter-truncated LSB stream.
  int lsb_region = -1;
  if (plan.counter > 0) {
    lsb_region = placer.begin_region();
    LsbStream lsb(plan.code);
    for (std::uint32_t m = 0; m < plan.counter; ++m) placer.add_bit(lsb.next());
    // The LSB area spans ceil(S/5) parts, matching the uncompressed column.
    const std::uint64_t want_slots = ((segs + 4) / 5) * 5;
    std::uint64_t have = plan.counter;
    while (have < want_slots) {
      placer.add_bit(0);
      ++have;
    }
  }
  // Mixed computation result, LSB dropped (the UN's last bit is constant 0).
  int and_region = -1;
  if (plan.bedge > 0) {
    and_region = placer.begin_region();
    const std::uint64_t mixed = plan.seed_word & ((std::uint64_t{1} << plan.bedge) - 1);
    for (int j = 0; j < p - 1; ++j) placer.add_bit(static_cast<int>((mixed >> j) & 1));
    placer.close_part(/*real_writes=*/true);
  }
  placer.finish(/*real_pad_writes=*/true);

  const std::uint64_t seed_count = placer.region_sum(seed_region);
  const std::uint64_t lsb_count = lsb_region >= 0 ? placer.region_sum(lsb_region) : 0;
  const std::uint64_t and_count = and_region >= 0 ? placer.region_sum(and_region) : 0;
  res.count = static_cast<std::uint32_t>(plan.counter * seed_count + lsb_count + and_count);
  res.scaled_value =
      static_cast<double>(res.count) / static_cast<double>(std::uint64_t{1} << cfg.width);
  res.segments_emitted = segs;

  // The seed TR result enters the adder tree `counter` times.
  const std::uint64_t inputs = plan.counter + (lsb_region >= 0 ? placer.region_parts(lsb_region) : 0) +
                               (and_region >= 0 ? placer.region_parts(and_region) : 0);
  const std::uint64_t writes = placer.bit_writes();
  CostLedger& led = res.ledger;
  led.charge(OpCat::OutputLogic, segs,
             static_cast<std::uint64_t>(segs) * cfg.output_cycles_per_segment,
             output_energy(segs, cfg));
  led.charge(OpCat::Shift, writes, writes * static_cast<std::uint64_t>(rtm.shift_cycles),
             static_cast<double>(writes) * rtm.shift_energy_pj);
  led.charge(OpCat::Write, writes + placer.forced_pads(),
             writes * static_cast<std::uint64_t>(rtm.write_cycles),
             static_cast<double>(writes + placer.forced_pads()) * rtm.write_energy_pj);
  led.charge(OpCat::Tr, placer.tree_inputs(),
             placer.waves() * static_cast<std::uint64_t>(rtm.tr_cycles),
             static_cast<double>(placer.tree_inputs()) * rtm.tr_energy_pj);
  charge_tree(inputs, led, cfg);
  led.charge(OpCat::Align, 0, static_cast<std::uint64_t>(cfg.port_alignment_cycles), 0.0);

  // Cycle comparison against the plain pipeline for the same operands.
  const std::uint64_t parts_u = (segs + 4) / 5;
  const std::uint64_t waves_u = (parts_u + 15) / 16;
  std::uint64_t unc = static_cast<std::uint64_t>(segs) * cfg.output_cycles_per_segment +
                      static_cast<std::uint64_t>(segs) * (rtm.shift_cycles + rtm.write_cycles) +
                      waves_u * rtm.tr_cycles + cfg.port_alignment_cycles;
  const std::uint64_t inputs_u = parts_u * static_cast<std::uint64_t>(p);
  if (inputs_u > 1)
    unc += static_cast<std::uint64_t>(cfg.tree_adder_latency_cycles) +
           (tree_passes(inputs_u, cfg) - 1) * cfg.tree_extra_pass_cycles;
  res.compressed_cycle_overhead = res.ledger.total_cycles() > unc;
  return res;
}

DotResult dot_product(std::span<const SignedPair> pairs, const MacConfig& cfg) {
  cfg.validate();
  if (pairs.empty()) throw std::invalid_argument("dot_product: empty input");
  for (const SignedPair& sp : pairs)
    if (sp.a.width != cfg.width || sp.b.width != cfg.width)
      throw std::invalid_argument("dot_product: operand width mismatch");

  const StreamRun pos = run_stream(pairs, 1, cfg);
  const StreamRun neg = run_stream(pairs, -1, cfg);

  DotResult res;
  res.value = static_cast<long long>(pos.sum) - static_cast<long long>(neg.sum);
  res.segments = pos.segments + neg.segments;
  res.parts = pos.parts + neg.parts;
  res.slots = pos.slots + neg.slots;
  // The two sign halves run concurrently on separate track halves: operation
  // counts and energy add, cycle depth is the slower half.
  for (int i = 0; i < kNumOpCats; ++i) {
    res.ledger.cat[i].ops = pos.ledger.cat[i].ops + neg.ledger.cat[i].ops;
    res.ledger.cat[i].energy_pj = pos.ledger.cat[i].energy_pj + neg.ledger.cat[i].energy_pj;
    res.ledger.cat[i].cycles = std::max(pos.ledger.cat[i].cycles, neg.ledger.cat[i].cycles);
  }
  if (pos.segments > 0 && neg.segments > 0)
    res.ledger.charge(OpCat::Adder, 1, 1, cfg.e_a_per_add_pj);
  return res;
}

std::uint64_t tree_add(std::span<const std::uint32_t> counts, CostLedger& ledger,
                       const MacConfig& cfg) {
  if (counts.empty()) throw std::invalid_argument("tree_add: empty input");
  std::uint64_t sum = 0;
  for (std::uint32_t c : counts) sum += c;
  charge_tree(counts.size(), ledger, cfg);
  return sum;
}

MacResult baseline_apc_multiply(const BinaryOperand& a, const BinaryOperand& b,
                                const MacConfig& cfg) {
  const SignedPair pair{a, b, 1};
  DotResult dot = baseline_apc_dot({&pair, 1}, cfg);
  MacResult res;
  res.count = static_cast<std::uint32_t>(dot.value);
  res.scaled_value =
      static_cast<double>(res.count) / static_cast<double>(std::uint64_t{1} << cfg.width);
  res.ledger = std::move(dot.ledger);
  return res;
}

DotResult baseline_apc_dot(std::span<const SignedPair> pairs, const MacConfig& cfg) {
  cfg.validate();
  if (pairs.empty()) throw std::invalid_argument("baseline_apc_dot: empty input");
  DotResult res;
  const std::uint64_t scan = std::uint64_t{1} << cfg.width;
  const std::uint64_t k = pairs.size();
  long long value = 0;
  for (const SignedPair& sp : pairs) value += sp.sign * static_cast<long long>(mul_reference(sp.a, sp.b));
  res.value = value;
  const RtmConfig& rtm = cfg.rtm;
  // One APC per multiplication, all scanning in lockstep: 2^n single-bit
  // accesses and accumulations regardless of operand values.
  res.ledger.charge(OpCat::Read, k * scan, scan, static_cast<double>(k * scan) * rtm.read_energy_pj);
  res.ledger.charge(OpCat::Adder, k * scan, 0, static_cast<double>(k * scan) * cfg.e_a_per_add_pj);
  const std::uint64_t passes = tree_passes(std::max<std::uint64_t>(k, 2), cfg);
  res.ledger.charge(OpCat::Adder, k > 1 ? k - 1 : 0,
                    static_cast<std::uint64_t>(cfg.tree_adder_latency_cycles) +
                        (passes - 1) * cfg.tree_extra_pass_cycles,
                    static_cast<double>(k > 1 ? k - 1 : 0) * cfg.e_a_per_add_pj);
  return res;
}

}  // namespace trsc
