#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trsc/bitseq.hpp"

namespace trsc {

enum class OpCat { Shift, Write, Tr, Read, OutputLogic, Adder, Align };
inline constexpr int kNumOpCats = 7;
const char* op_cat_name(OpCat c);

// Per-category operation, cycle and energy accounting. Energy buckets:
// E_C = output logic, E_R = shift + write + tr + read, E_A = adders.
struct CostLedger {
  struct Entry {
    std::uint64_t ops = 0;
    std::uint64_t cycles = 0;
    double energy_pj = 0.0;
  };
  std::array<Entry, kNumOpCats> cat{};

  void charge(OpCat c, std::uint64_t ops, std::uint64_t cycles, double energy_pj);
  void merge(const CostLedger& o);

  std::uint64_t total_cycles() const;
  double total_energy_pj() const;
  double e_c() const;
  double e_r() const;
  double e_a() const;

  void write_csv(std::ostream& os) const;
};

// Device constants. Defaults follow the experimental racetrack setup: 256
// domains per track of which 193 are used as 32 five-domain parts separated
// by 33 constant-0 boundary domains, TR spanning 7 domains.
struct RtmConfig {
  int domains_per_track = 256;
  int parts_per_track = 32;
  int valid_per_part = 5;
  int trd_domains = 7;
  int shift_cycles = 2;
  int write_cycles = 2;
  int tr_cycles = 5;
  double shift_energy_pj = 0.3;
  double write_energy_pj = 0.1;
  double tr_energy_pj = 0.175;
  int ports_per_track = 33;
  int tracks_per_dbc = 32;
  // No published read constants; plain reads default to write cost.
  int read_cycles = 2;
  double read_energy_pj = 0.1;
  // Accounting granularity: when true, energies are charged per track per
  // operation instead of once per (transposed) operation.
  bool charge_per_track = false;

  int used_domains() const {
    return parts_per_track * valid_per_part + parts_per_track + 1;
  }
  int part_stride() const { return valid_per_part + 1; }

  void validate() const;
  static RtmConfig from_file(const std::string& path);
  static RtmConfig from_stream(std::istream& is);
};

// A domain block cluster: `tracks` nanowires shifted and accessed together.
// Part p occupies domains [p*6+1, p*6+5] on every track; domains at multiples
// of 6 are the shared constant-0 boundaries.
class RtmDbc {
 public:
  RtmDbc(const RtmConfig& cfg, int tracks);

  int tracks() const { return tracks_; }
  int parts() const { return cfg_.parts_per_track; }
  const RtmConfig& config() const { return cfg_; }
  int fill(int part) const;
  int shift_position() const { return shift_pos_; }
  bool domain(int track, int pos) const;
  bool is_boundary(int pos) const { return pos % cfg_.part_stride() == 0; }

  // Writes bit i of `segment` to track i at the part's next free valid slot.
  // Throws on a full part; callers drain with TR first.
  void write_transposed(int part, const BitSeq& segment, CostLedger& ledger);
  void write_transposed(int part, std::uint64_t segment_bits, CostLedger& ledger);

  // Single-track, single-bit write at the part's next free slot on `track`
  // (horizontal placement used by seed-compressed storage). Advances the
  // part's fill like a full column write.
  void write_bit(int track, int part, int bit, CostLedger& ledger);

  // Zero-fill the part's remaining slots. Charged write energy only: the
  // forced stores happen inside the TR drain window.
  void pad_part(int part, CostLedger& ledger);

  // Exact ones count of the part's valid window on one track (ideal TR).
  int transverse_read(int track, int part, CostLedger& ledger) const;
  int transverse_read(int track, int part) const;

  // One TR wave over the given parts across every track; rejects adjacent
  // parts in the same wave. Charges one op per (track, part) and one
  // tr_cycles window for the wave.
  std::vector<std::vector<int>> tr_wave(const std::vector<int>& parts,
                                        CostLedger& ledger) const;

  // Ping-pong drain of all parts: even-indexed wave then odd-indexed wave.
  // Returns counts[track][part].
  std::vector<std::vector<int>> tr_all_parts(CostLedger& ledger) const;

  static std::vector<std::vector<int>> pingpong_waves(int parts);

  void shift(int steps, CostLedger& ledger);

  void clear_part(int part);
  void clear();

 private:
  int slot_pos(int part, int slot) const { return part * cfg_.part_stride() + 1 + slot; }
  void check_part(int part) const;

  RtmConfig cfg_;
  int tracks_;
  std::vector<BitSeq> domains_;  // one per track
  std::vector<int> fill_;
  int shift_pos_ = 0;
};

}  // namespace trsc
