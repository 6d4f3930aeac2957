#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trsc/mac.hpp"

namespace trsc {

// One evaluated (precision, parallelism) grid point.
struct SweepPoint {
  int n = 0;
  int p = 0;
  std::string workload;
  std::uint64_t cycles = 0;
  double e_c_pj = 0.0;
  double e_r_pj = 0.0;
  double e_a_pj = 0.0;
  double opj = 0.0;
  double edp = 0.0;
  std::uint64_t storage_parts = 0;
};

// Operations per picojoule over the ledger's total energy.
double opj(const CostLedger& ledger, std::uint64_t n_ops);

// Energy-delay product in pJ*ns.
double edp(const CostLedger& ledger, double clock_ns = 1.0);

// Part footprint of one stored operand stream of S output segments.
// Compressed rows use the published seed/AND lookup; note the 32-P entry is
// the published value 6, not ceil(31/5).
std::uint64_t storage_parts(int p, std::uint64_t s, bool compressed);

struct StorageBreakdown {
  std::uint64_t seed_parts = 0;
  std::uint64_t lsb_parts = 0;
  std::uint64_t and_parts = 0;
  std::uint64_t total() const { return seed_parts + lsb_parts + and_parts; }
};
StorageBreakdown storage_breakdown(int p, std::uint64_t s);

// Operand workload for design-space sweeps. Values are stated at src_width
// bits and rescaled (shifted) to each grid precision.
struct SweepWorkload {
  std::string id;
  int src_width = 8;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

std::vector<SweepPoint> sweep(const std::vector<int>& widths,
                              const std::vector<int>& parallelisms,
                              const SweepWorkload& workload,
                              const MacConfig& base = MacConfig{});

// Monotonicity diagnostics: latency nonincreasing in P at fixed n, cycles
// increasing in n at fixed P. Returns one line per violation.
std::vector<std::string> sweep_diagnostics(const std::vector<SweepPoint>& points);

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& os);

}  // namespace trsc
