#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trsc/cost.hpp"
#include "trsc/mac.hpp"

namespace trsc {

// Bad input data (traces, results files). The CLI maps this to exit code 3,
// as opposed to configuration errors (exit 2).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceRecord {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  int sign = 1;
};

// Value distribution of the UN operand b; a pairs uniformly. The network
// preset concentrates b in the low quarter of the range the way convolution
// operands do after activation.
struct DistributionSpec {
  enum class Kind { Network, Uniform, Histogram };
  Kind kind = Kind::Network;
  int width = 8;
  std::vector<double> probs;  // histogram only, size 2^width

  void validate() const;
  static DistributionSpec network(int width);
  static DistributionSpec uniform(int width);
};

// CSV with header a,b[,sign]; decimal values below 2^width. Parse and range
// errors carry the 1-based line number.
std::vector<TraceRecord> load_trace(std::istream& is, int width);
std::vector<TraceRecord> load_trace_file(const std::string& path, int width);

std::vector<TraceRecord> synth_workload(const DistributionSpec& spec, std::uint64_t count,
                                        std::uint64_t seed);

SweepWorkload to_sweep_workload(const std::vector<TraceRecord>& records, std::string id,
                                int src_width);

// One comparison row. Reference architectures are published constants, not
// simulated here; their simulated flag is false and both cycle columns carry
// the same number.
struct BaselineRow {
  std::string name;
  std::uint64_t batch_cycles = 0;   // parallel-unit accounting
  std::uint64_t stream_cycles = 0;  // pipelined dot-product accounting
  double energy_pj = 0.0;
  bool simulated = true;
};

std::vector<BaselineRow> compare_baselines(const std::vector<TraceRecord>& workload,
                                           const MacConfig& cfg);
void write_baselines_csv(const std::vector<BaselineRow>& rows, std::ostream& os);

// Re-render a sweep results CSV sorted by (n, P). format is "csv" or "text".
// Missing or unknown columns raise DataError.
std::string report(std::istream& results_csv, const std::string& format);

}  // namespace trsc
