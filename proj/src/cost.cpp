#include "trsc/cost.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace trsc {

double opj(const CostLedger& ledger, std::uint64_t n_ops) {
  const double e = ledger.total_energy_pj();
  if (e <= 0.0) throw std::invalid_argument("opj: zero total energy");
  return static_cast<double>(n_ops) / e;
}

double edp(const CostLedger& ledger, double clock_ns) {
  return ledger.total_energy_pj() * static_cast<double>(ledger.total_cycles()) * clock_ns;
}

namespace {

// Published seed/AND part counts per parallelism. 32-P stores the seed in 6
// parts, not the ceil(31/5) = 7 the formula would give.
const std::map<int, std::pair<std::uint64_t, std::uint64_t>> kSeedAndParts = {
    {4, {1, 1}}, {8, {2, 2}}, {16, {3, 3}}, {32, {6, 6}}};

}  // namespace

StorageBreakdown storage_breakdown(int p, std::uint64_t s) {
  if (s < 1) throw std::invalid_argument("storage_breakdown: S must be >= 1");
  const auto it = kSeedAndParts.find(p);
  if (it == kSeedAndParts.end())
    throw std::invalid_argument("storage_breakdown: no compressed layout for parallelism " +
                                std::to_string(p));
  return {it->second.first, (s + 4) / 5, it->second.second};
}

std::uint64_t storage_parts(int p, std::uint64_t s, bool compressed) {
  if (s < 1) throw std::invalid_argument("storage_parts: S must be >= 1");
  if (compressed) return storage_breakdown(p, s).total();
  if (p != 4 && p != 8 && p != 16 && p != 32 && p != 64)
    throw std::invalid_argument("storage_parts: unsupported parallelism " + std::to_string(p));
  return (static_cast<std::uint64_t>(p) * s + 4) / 5;
}

namespace {

std::uint32_t rescale(std::uint32_t v, int from_width, int to_width) {
  if (to_width >= from_width) return v << (to_width - from_width);
  return v >> (from_width - to_width);
}

SweepPoint eval_point(int n, int p, const SweepWorkload& wl, const MacConfig& base) {
  MacConfig cfg = base;
  cfg.width = n;
  cfg.parallelism = p;
  cfg.validate();

  std::vector<SignedPair> pairs;
  pairs.reserve(wl.pairs.size());
  for (const auto& [a, b] : wl.pairs)
    pairs.push_back({BinaryOperand(rescale(a, wl.src_width, n), n),
                     BinaryOperand(rescale(b, wl.src_width, n), n), 1});
  const DotResult dot = dot_product(pairs, cfg);

  SweepPoint pt;
  pt.n = n;
  pt.p = p;
  pt.workload = wl.id;
  pt.cycles = dot.ledger.total_cycles();
  pt.e_c_pj = dot.ledger.e_c();
  pt.e_r_pj = dot.ledger.e_r();
  pt.e_a_pj = dot.ledger.e_a();
  pt.opj = opj(dot.ledger, wl.pairs.size());
  pt.edp = edp(dot.ledger, cfg.clock_ns);
  const std::uint64_t worst_segments = std::uint64_t{1} << (n - cfg.seg_exp());
  pt.storage_parts = storage_parts(p, worst_segments, /*compressed=*/p != 64);
  return pt;
}

}  // namespace

std::vector<SweepPoint> sweep(const std::vector<int>& widths,
                              const std::vector<int>& parallelisms,
                              const SweepWorkload& workload, const MacConfig& base) {
  if (widths.empty() || parallelisms.empty())
    throw std::invalid_argument("sweep: empty grid axis");
  if (workload.pairs.empty()) throw std::invalid_argument("sweep: empty workload");
  std::vector<SweepPoint> points;
  points.reserve(widths.size() * parallelisms.size());
  for (int n : widths)
    for (int p : parallelisms) points.push_back(eval_point(n, p, workload, base));
  return points;
}

std::vector<std::string> sweep_diagnostics(const std::vector<SweepPoint>& points) {
  std::vector<std::string> out;
  for (const SweepPoint& x : points)
    for (const SweepPoint& y : points) {
      if (x.workload != y.workload) continue;
      if (x.n == y.n && x.p < y.p && y.cycles > x.cycles) {
        std::ostringstream os;
        os << "latency not nonincreasing in P at n=" << x.n << ": P=" << y.p << " ("
           << y.cycles << " cy) > P=" << x.p << " (" << x.cycles << " cy)";
        out.push_back(os.str());
      }
      if (x.p == y.p && x.n < y.n && y.cycles <= x.cycles) {
        std::ostringstream os;
        os << "cycles not increasing in n at P=" << x.p << ": n=" << y.n << " ("
           << y.cycles << " cy) <= n=" << x.n << " (" << x.cycles << " cy)";
        out.push_back(os.str());
      }
    }
  return out;
}

void write_sweep_csv(const std::vector<SweepPoint>& points, std::ostream& os) {
  os << "n,P,workload,cycles,e_c_pj,e_r_pj,e_a_pj,opj,edp,storage_parts\n";
  for (const SweepPoint& pt : points)
    os << pt.n << ',' << pt.p << ',' << pt.workload << ',' << pt.cycles << ',' << pt.e_c_pj
       << ',' << pt.e_r_pj << ',' << pt.e_a_pj << ',' << pt.opj << ',' << pt.edp << ','
       << pt.storage_parts << '\n';
}

}  // namespace trsc
