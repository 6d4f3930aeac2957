#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trsc/cost.hpp"
#include "trsc/ldsc.hpp"
#include "trsc/mac.hpp"
#include "trsc/pfc.hpp"
#include "trsc/workload.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 config invalid, 3 input data invalid.
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_path;
};

std::ostream& out_stream(const GlobalOpts& g, std::ofstream& file) {
  if (g.out_path.empty()) return std::cout;
  file.open(g.out_path);
  if (!file) throw trsc::DataError("cannot open output file " + g.out_path);
  return file;
}

trsc::MacConfig make_cfg(const GlobalOpts& g, int width, int parallelism) {
  trsc::MacConfig cfg;
  if (!g.config_path.empty()) cfg.rtm = trsc::RtmConfig::from_file(g.config_path);
  cfg.width = width;
  cfg.parallelism = parallelism;
  cfg.validate();
  return cfg;
}

void print_ledger(const trsc::CostLedger& led, std::ostream& os) {
  os << "cycles," << led.total_cycles() << '\n'
     << "energy_pj," << led.total_energy_pj() << '\n'
     << "e_c_pj," << led.e_c() << '\n'
     << "e_r_pj," << led.e_r() << '\n'
     << "e_a_pj," << led.e_a() << '\n';
}

std::vector<trsc::TraceRecord> resolve_workload(const std::string& spec, int width,
                                                std::uint64_t count, std::uint64_t seed) {
  if (spec == "network")
    return trsc::synth_workload(trsc::DistributionSpec::network(width), count, seed);
  if (spec == "uniform")
    return trsc::synth_workload(trsc::DistributionSpec::uniform(width), count, seed);
  return trsc::load_trace_file(spec, width);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TR-assisted stochastic computing MAC simulator"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "device config file (key=value lines)");
  app.add_option("--seed", g.seed, "RNG seed for synthetic workloads");
  app.add_option("--out", g.out_path, "output path (default stdout)");

  std::uint32_t value = 0, a = 0, b = 0;
  int width = 8, parallelism = 64, seg_exp = 2;
  bool unary = false, seed_compressed = false, baselines = false;
  std::string trace_path, workload_spec = "network", results_path, format = "text";
  std::uint64_t count = 10000;
  std::vector<int> widths{8};
  std::vector<int> parallelisms{4, 8, 16, 32, 64};

  auto* enc = app.add_subcommand("encode", "encode a value as an SN or UN bitstream");
  enc->add_option("--value", value, "operand value")->required();
  enc->add_option("--width,-n", width, "operand bit width");
  enc->add_flag("--unary", unary, "emit the unary encoding instead of the SN");

  auto* cmp = app.add_subcommand("compress", "pseudo-fractal compression of a value");
  cmp->add_option("--value", value, "operand value")->required();
  cmp->add_option("--width,-n", width, "operand bit width");
  cmp->add_option("--seg-exp,-s", seg_exp, "segment length exponent");

  auto* mul = app.add_subcommand("mul", "one TR-assisted multiplication with cost ledger");
  mul->add_option("--a", a, "SN operand")->required();
  mul->add_option("--b", b, "UN operand")->required();
  mul->add_option("--width,-n", width, "operand bit width");
  mul->add_option("--parallelism,-p", parallelism, "segment length P");
  mul->add_flag("--seed-compressed", seed_compressed, "use the seed-compressed layout");

  auto* dot = app.add_subcommand("dot", "dot product over a trace file");
  dot->add_option("--trace", trace_path, "CSV trace with header a,b[,sign]")->required();
  dot->add_option("--width,-n", width, "operand bit width");
  dot->add_option("--parallelism,-p", parallelism, "segment length P");
  dot->add_flag("--baselines", baselines, "emit the baseline comparison table instead");

  auto* swp = app.add_subcommand("sweep", "design-space sweep over (width, parallelism)");
  swp->add_option("--widths", widths, "precision axis")->delimiter(',');
  swp->add_option("--parallelisms", parallelisms, "parallelism axis")->delimiter(',');
  swp->add_option("--workload", workload_spec, "trace CSV path, or 'network'/'uniform'");
  swp->add_option("--count", count, "sample count for synthetic workloads");

  auto* rep = app.add_subcommand("report", "render a sweep results CSV sorted by (n, P)");
  rep->add_option("--in", results_path, "results CSV path")->required();
  rep->add_option("--format", format, "csv or text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::ofstream file;
    std::ostream& os = out_stream(g, file);

    if (*enc) {
      const trsc::BinaryOperand op(value, width);
      os << (unary ? trsc::encode_un(op).bits.to_string()
                   : trsc::encode_sn(op).bits.to_string())
         << '\n';
    } else if (*cmp) {
      const trsc::PfcCode code = trsc::compress(trsc::BinaryOperand(value, width), seg_exp);
      os << "seed," << code.seed.to_string() << '\n'
         << "low_bits," << code.low_bits << '\n'
         << "stored_bits," << trsc::stored_bits(width, seg_exp) << '\n'
         << "ratio," << trsc::compression_ratio(width, seg_exp) << '\n';
    } else if (*mul) {
      const trsc::MacConfig cfg = make_cfg(g, width, parallelism);
      const trsc::BinaryOperand oa(a, width), ob(b, width);
      const trsc::MacResult res = seed_compressed
                                      ? trsc::multiply_seed_compressed(oa, ob, cfg)
                                      : trsc::multiply(oa, ob, cfg);
      os << "count," << res.count << '\n'
         << "scaled_value," << res.scaled_value << '\n'
         << "segments," << res.segments_emitted << '\n';
      print_ledger(res.ledger, os);
    } else if (*dot) {
      const trsc::MacConfig cfg = make_cfg(g, width, parallelism);
      const auto records = trsc::load_trace_file(trace_path, width);
      if (baselines) {
        trsc::write_baselines_csv(trsc::compare_baselines(records, cfg), os);
      } else {
        std::vector<trsc::SignedPair> pairs;
        for (const auto& r : records)
          pairs.push_back(
              {trsc::BinaryOperand(r.a, width), trsc::BinaryOperand(r.b, width), r.sign});
        const trsc::DotResult res = trsc::dot_product(pairs, cfg);
        os << "value," << res.value << '\n' << "segments," << res.segments << '\n';
        print_ledger(res.ledger, os);
      }
    } else if (*swp) {
      trsc::MacConfig base;
      if (!g.config_path.empty()) base.rtm = trsc::RtmConfig::from_file(g.config_path);
      const int src_width = *std::max_element(widths.begin(), widths.end());
      const auto records = resolve_workload(workload_spec, src_width, count, g.seed);
      const auto wl = trsc::to_sweep_workload(records, workload_spec, src_width);
      const auto points = trsc::sweep(widths, parallelisms, wl, base);
      trsc::write_sweep_csv(points, os);
      for (const std::string& diag : trsc::sweep_diagnostics(points))
        std::cerr << "diagnostic: " << diag << '\n';
    } else if (*rep) {
      std::ifstream in(results_path);
      if (!in) throw trsc::DataError("cannot open results file " + results_path);
      os << trsc::report(in, format);
    }
  } catch (const trsc::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
