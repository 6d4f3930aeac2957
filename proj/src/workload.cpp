#include "trsc/workload.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace trsc {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& s, std::size_t line_no, const char* what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(trim(s), &pos);
    if (pos != trim(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": bad " + what + " value '" + s + "'");
  }
}

}  // namespace

void DistributionSpec::validate() const {
  if (width < kMinWidth || width > kMaxWidth)
    throw std::invalid_argument("DistributionSpec: width outside [1,16]");
  if (kind == Kind::Histogram) {
    if (probs.size() != (std::size_t{1} << width))
      throw std::invalid_argument("DistributionSpec: histogram size must be 2^width");
    double sum = 0.0;
    for (double p : probs) {
      if (p < 0.0) throw std::invalid_argument("DistributionSpec: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("DistributionSpec: probabilities sum to " + std::to_string(sum));
  }
}

DistributionSpec DistributionSpec::network(int width) { return {Kind::Network, width, {}}; }
DistributionSpec DistributionSpec::uniform(int width) { return {Kind::Uniform, width, {}}; }

std::vector<TraceRecord> load_trace(std::istream& is, int width) {
  const std::uint32_t limit = std::uint32_t{1} << width;
  std::string line;
  if (!std::getline(is, line)) throw DataError("line 1: missing header");
  auto header = split_csv(trim(line));
  for (auto& h : header) h = trim(h);
  const bool with_sign = header.size() == 3 && header[2] == "sign";
  if (!((header.size() == 2 || with_sign) && header[0] == "a" && header[1] == "b"))
    throw DataError("line 1: expected header a,b or a,b,sign");

  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(trim(line));
    if (fields.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    TraceRecord rec;
    const long long a = parse_int(fields[0], line_no, "a");
    const long long b = parse_int(fields[1], line_no, "b");
    if (a < 0 || a >= limit || b < 0 || b >= limit)
      throw DataError("line " + std::to_string(line_no) + ": operand out of range for width " +
                      std::to_string(width));
    rec.a = static_cast<std::uint32_t>(a);
    rec.b = static_cast<std::uint32_t>(b);
    if (with_sign) {
      const long long s = parse_int(fields[2], line_no, "sign");
      if (s != 1 && s != -1)
        throw DataError("line " + std::to_string(line_no) + ": sign must be 1 or -1");
      rec.sign = static_cast<int>(s);
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<TraceRecord> load_trace_file(const std::string& path, int width) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open trace file " + path);
  return load_trace(is, width);
}

std::vector<TraceRecord> synth_workload(const DistributionSpec& spec, std::uint64_t count,
                                        std::uint64_t seed) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("synth_workload: count must be >= 1");
  std::mt19937_64 rng(seed);
  const std::uint32_t limit = std::uint32_t{1} << spec.width;
  std::uniform_int_distribution<std::uint32_t> full(0, limit - 1);
  std::uniform_int_distribution<std::uint32_t> low(0, limit / 4 - 1);
  std::uniform_int_distribution<std::uint32_t> high(limit / 4, limit - 1);
  std::bernoulli_distribution tail(0.008);
  std::discrete_distribution<std::uint32_t> hist;
  if (spec.kind == DistributionSpec::Kind::Histogram)
    hist = std::discrete_distribution<std::uint32_t>(spec.probs.begin(), spec.probs.end());

  std::vector<TraceRecord> records;
  records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TraceRecord rec;
    rec.a = full(rng);
    switch (spec.kind) {
      case DistributionSpec::Kind::Network: rec.b = tail(rng) ? high(rng) : low(rng); break;
      case DistributionSpec::Kind::Uniform: rec.b = full(rng); break;
      case DistributionSpec::Kind::Histogram: rec.b = hist(rng); break;
    }
    records.push_back(rec);
  }
  return records;
}

SweepWorkload to_sweep_workload(const std::vector<TraceRecord>& records, std::string id,
                                int src_width) {
  SweepWorkload wl;
  wl.id = std::move(id);
  wl.src_width = src_width;
  wl.pairs.reserve(records.size());
  for (const TraceRecord& r : records) wl.pairs.emplace_back(r.a, r.b);
  return wl;
}

std::vector<BaselineRow> compare_baselines(const std::vector<TraceRecord>& workload,
                                           const MacConfig& cfg) {
  cfg.validate();
  if (workload.empty()) throw std::invalid_argument("compare_baselines: empty workload");
  std::vector<OperandPair> pairs;
  std::vector<SignedPair> signed_pairs;
  for (const TraceRecord& r : workload) {
    pairs.push_back({BinaryOperand(r.a, cfg.width), BinaryOperand(r.b, cfg.width)});
    signed_pairs.push_back({BinaryOperand(r.a, cfg.width), BinaryOperand(r.b, cfg.width), r.sign});
  }

  std::vector<BaselineRow> rows;
  {
    const BatchResult batch = accumulate_batch(pairs, cfg);
    const DotResult dot = dot_product(signed_pairs, cfg);
    rows.push_back({"tr_assisted", batch.ledger.total_cycles(), dot.ledger.total_cycles(),
                    batch.ledger.total_energy_pj(), true});
  }
  {
    CostLedger merged;
    for (const OperandPair& pr : pairs)
      merged.merge(multiply_seed_compressed(pr.a, pr.b, cfg).ledger);
    rows.push_back({"tr_assisted_seed_compressed", merged.total_cycles(), merged.total_cycles(),
                    merged.total_energy_pj(), true});
  }
  {
    const DotResult apc = baseline_apc_dot(signed_pairs, cfg);
    rows.push_back({"apc_baseline", apc.ledger.total_cycles(), apc.ledger.total_cycles(),
                    apc.ledger.total_energy_pj(), true});
  }
  // Published single-multiplication numbers for the reference architectures,
  // echoed for context only.
  rows.push_back({"coruscant_reference", 64, 64, 46.7, false});
  rows.push_back({"spim_reference", 149, 149, 196.0, false});
  rows.push_back({"dwnn_reference", 163, 163, 308.0, false});
  return rows;
}

void write_baselines_csv(const std::vector<BaselineRow>& rows, std::ostream& os) {
  os << "name,batch_cycles,stream_cycles,energy_pj,simulated\n";
  for (const BaselineRow& r : rows)
    os << r.name << ',' << r.batch_cycles << ',' << r.stream_cycles << ',' << r.energy_pj << ','
       << (r.simulated ? "yes" : "no") << '\n';
}

std::string report(std::istream& results_csv, const std::string& format) {
  if (format != "csv" && format != "text")
    throw std::invalid_argument("report: format must be csv or text");
  std::string line;
  if (!std::getline(results_csv, line)) throw DataError("line 1: missing header");
  const auto header = split_csv(trim(line));
  const std::vector<std::string> required = {"n",      "P",      "workload", "cycles",
                                             "e_c_pj", "e_r_pj", "e_a_pj",   "opj",
                                             "edp",    "storage_parts"};
  for (const std::string& col : required)
    if (std::find(header.begin(), header.end(), col) == header.end())
      throw DataError("line 1: missing column " + col);
  const auto col_index = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::find(header.begin(), header.end(), name) - header.begin());
  };
  const std::size_t n_col = col_index("n"), p_col = col_index("P");

  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(results_csv, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(trim(line));
    if (fields.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    parse_int(fields[n_col], line_no, "n");
    parse_int(fields[p_col], line_no, "P");
    rows.push_back(std::move(fields));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const auto& x, const auto& y) {
                     const long long xn = std::stoll(x[n_col]), yn = std::stoll(y[n_col]);
                     if (xn != yn) return xn < yn;
                     return std::stoll(x[p_col]) < std::stoll(y[p_col]);
                   });

  std::ostringstream os;
  if (format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) widths[i] = header[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  const auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(widths[i])) << row[i];
    os << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return os.str();
}

}  // namespace trsc
