#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trsc/cost.hpp"
#include "trsc/ldsc.hpp"
#include "trsc/mac.hpp"
#include "trsc/pfc.hpp"
#include "trsc/workload.hpp"

namespace py = pybind11;

namespace {

trsc::MacConfig make_cfg(int width, int parallelism) {
  trsc::MacConfig cfg;
  cfg.width = width;
  cfg.parallelism = parallelism;
  cfg.validate();
  return cfg;
}

py::dict ledger_dict(const trsc::CostLedger& led) {
  py::dict d;
  d["cycles"] = led.total_cycles();
  d["energy_pj"] = led.total_energy_pj();
  d["e_c_pj"] = led.e_c();
  d["e_r_pj"] = led.e_r();
  d["e_a_pj"] = led.e_a();
  return d;
}

}  // namespace

PYBIND11_MODULE(_trsc, m) {
  m.doc() = "TR-assisted stochastic computing MAC simulator core";

  m.def("encode_sn", [](std::uint32_t value, int width) {
    return trsc::encode_sn(trsc::BinaryOperand(value, width)).bits.to_string();
  });
  m.def("encode_un", [](std::uint32_t value, int width) {
    return trsc::encode_un(trsc::BinaryOperand(value, width)).bits.to_string();
  });
  m.def("sn_bit", [](std::uint32_t value, int width, std::uint32_t j) {
    return trsc::sn_bit(trsc::BinaryOperand(value, width), j);
  });
  m.def("mul_reference", [](std::uint32_t a, std::uint32_t b, int width) {
    return trsc::mul_reference(trsc::BinaryOperand(a, width), trsc::BinaryOperand(b, width));
  });

  m.def("compress", [](std::uint32_t value, int width, int seg_exp) {
    const trsc::PfcCode code = trsc::compress(trsc::BinaryOperand(value, width), seg_exp);
    py::dict d;
    d["seed"] = code.seed.to_string();
    d["low_bits"] = code.low_bits;
    d["stored_bits"] = trsc::stored_bits(width, seg_exp);
    d["ratio"] = trsc::compression_ratio(width, seg_exp);
    d["decompressed"] = trsc::decompress(code).bits.to_string();
    return d;
  });

  m.def(
      "multiply",
      [](std::uint32_t a, std::uint32_t b, int width, int parallelism, bool seed_compressed) {
        const trsc::MacConfig cfg = make_cfg(width, parallelism);
        const trsc::BinaryOperand oa(a, width), ob(b, width);
        const trsc::MacResult res = seed_compressed
                                        ? trsc::multiply_seed_compressed(oa, ob, cfg)
                                        : trsc::multiply(oa, ob, cfg);
        py::dict d = ledger_dict(res.ledger);
        d["count"] = res.count;
        d["scaled_value"] = res.scaled_value;
        d["segments"] = res.segments_emitted;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("width") = 8, py::arg("parallelism") = 64,
      py::arg("seed_compressed") = false);

  m.def(
      "dot",
      [](const std::vector<std::tuple<std::uint32_t, std::uint32_t, int>>& terms, int width,
         int parallelism) {
        const trsc::MacConfig cfg = make_cfg(width, parallelism);
        std::vector<trsc::SignedPair> pairs;
        for (const auto& [a, b, sign] : terms)
          pairs.push_back({trsc::BinaryOperand(a, width), trsc::BinaryOperand(b, width), sign});
        const trsc::DotResult res = trsc::dot_product(pairs, cfg);
        py::dict d = ledger_dict(res.ledger);
        d["value"] = res.value;
        d["segments"] = res.segments;
        return d;
      },
      py::arg("terms"), py::arg("width") = 8, py::arg("parallelism") = 64);

  m.def("storage_parts", &trsc::storage_parts, py::arg("p"), py::arg("s"),
        py::arg("compressed"));

  m.def(
      "sweep",
      [](const std::vector<int>& widths, const std::vector<int>& parallelisms,
         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs, int src_width,
         const std::string& id) {
        trsc::SweepWorkload wl{id, src_width, pairs};
        std::vector<py::dict> out;
        for (const trsc::SweepPoint& pt : trsc::sweep(widths, parallelisms, wl)) {
          py::dict d;
          d["n"] = pt.n;
          d["P"] = pt.p;
          d["workload"] = pt.workload;
          d["cycles"] = pt.cycles;
          d["e_c_pj"] = pt.e_c_pj;
          d["e_r_pj"] = pt.e_r_pj;
          d["e_a_pj"] = pt.e_a_pj;
          d["opj"] = pt.opj;
          d["edp"] = pt.edp;
          d["storage_parts"] = pt.storage_parts;
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("widths"), py::arg("parallelisms"), py::arg("pairs"), py::arg("src_width") = 8,
      py::arg("id") = "inline");

  m.def(
      "synth_workload",
      [](const std::string& kind, int width, std::uint64_t count, std::uint64_t seed) {
        trsc::DistributionSpec spec = kind == "uniform"
                                          ? trsc::DistributionSpec::uniform(width)
                                          : trsc::DistributionSpec::network(width);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (const trsc::TraceRecord& r : trsc::synth_workload(spec, count, seed))
          out.emplace_back(r.a, r.b);
        return out;
      },
      py::arg("kind") = "network", py::arg("width") = 8, py::arg("count") = 1000,
      py::arg("seed") = 1);
}
