#include "doctest.h"
#include "trsc/workload.hpp"

#include <sstream>
#include <string>

using namespace trsc;

TEST_CASE("trace loading accepts both header forms") {
  std::istringstream two("a,b\n45,200\n");
  const auto r2 = load_trace(two, 8);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].a == 45);
  CHECK(r2[0].b == 200);
  CHECK(r2[0].sign == 1);

  std::istringstream three("a,b,sign\n3,7,-1\n10,11,1\n");
  const auto r3 = load_trace(three, 8);
  REQUIRE(r3.size() == 2);
  CHECK(r3[0].sign == -1);
  CHECK(r3[1].sign == 1);
}

TEST_CASE("trace errors carry line numbers") {
  const auto expect_error = [](const std::string& text, const std::string& fragment) {
    std::istringstream is(text);
    try {
      load_trace(is, 8);
      FAIL("expected DataError for: " << text);
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("a,b\n1,300\n", "line 2");
  expect_error("a,b\n1,2\nx,2\n", "line 3");
  expect_error("b,a\n1,2\n", "line 1");
  expect_error("a,b\n1\n", "line 2");
  expect_error("a,b,sign\n1,2,0\n", "sign");
}

TEST_CASE("synthetic workloads are deterministic in the seed") {
  const auto spec = DistributionSpec::network(8);
  const auto w1 = synth_workload(spec, 500, 42);
  const auto w2 = synth_workload(spec, 500, 42);
  const auto w3 = synth_workload(spec, 500, 43);
  REQUIRE(w1.size() == 500);
  bool same = true, diff = false;
  for (std::size_t i = 0; i < 500; ++i) {
    same = same && w1[i].a == w2[i].a && w1[i].b == w2[i].b;
    diff = diff || w1[i].b != w3[i].b;
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("network distribution keeps the UN operand small") {
  const auto w = synth_workload(DistributionSpec::network(8), 100000, 3);
  std::size_t low = 0;
  for (const auto& r : w) low += r.b <= 63 ? 1 : 0;
  // 99.2% nominal mass; allow binomial slack.
  CHECK(static_cast<double>(low) / w.size() >= 0.99);
  CHECK(static_cast<double>(low) / w.size() < 0.998);
}

TEST_CASE("uniform distribution has the expected mean") {
  const auto w = synth_workload(DistributionSpec::uniform(8), 100000, 4);
  double sum = 0;
  for (const auto& r : w) sum += r.b;
  // sigma of the mean is about 0.23 here.
  CHECK(sum / w.size() == doctest::Approx(127.5).epsilon(0.01));
}

TEST_CASE("histogram spec validation") {
  DistributionSpec spec{DistributionSpec::Kind::Histogram, 2, {0.5, 0.5, 0.0, 0.0}};
  CHECK_NOTHROW(spec.validate());
  const auto w = synth_workload(spec, 1000, 5);
  for (const auto& r : w) CHECK(r.b <= 1);
  spec.probs = {0.5, 0.6, 0.0, 0.0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.probs = {0.5, 0.5};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("baseline comparison emits simulated and reference rows") {
  MacConfig cfg;
  const std::vector<TraceRecord> wl{{255, 255, 1}};
  const auto rows = compare_baselines(wl, cfg);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].name == "tr_assisted");
  CHECK(rows[0].batch_cycles == 32);
  CHECK(rows[0].simulated);
  CHECK(rows[2].name == "apc_baseline");
  CHECK(rows[2].batch_cycles == 259);
  int reference = 0;
  for (const auto& r : rows) reference += r.simulated ? 0 : 1;
  CHECK(reference == 3);
  std::ostringstream os;
  write_baselines_csv(rows, os);
  CHECK(os.str().rfind("name,batch_cycles,stream_cycles,energy_pj,simulated\n", 0) == 0);
}

TEST_CASE("report sorts by precision then parallelism") {
  const std::string csv =
      "n,P,workload,cycles,e_c_pj,e_r_pj,e_a_pj,opj,edp,storage_parts\n"
      "8,64,w,10,1,1,1,1,30,52\n"
      "6,8,w,99,1,1,1,1,297,12\n"
      "8,4,w,80,1,1,1,1,240,15\n";
  std::istringstream is(csv);
  const std::string out = report(is, "csv");
  const auto p6 = out.find("6,8");
  const auto p84 = out.find("8,4");
  const auto p864 = out.find("8,64");
  REQUIRE(p6 != std::string::npos);
  CHECK(p6 < p84);
  CHECK(p84 < p864);

  std::istringstream is2(csv);
  const std::string text = report(is2, "text");
  CHECK(text.find("storage_parts") != std::string::npos);
}

TEST_CASE("report rejects malformed input") {
  std::istringstream missing("n,P,workload\n8,64,w\n");
  CHECK_THROWS_AS(report(missing, "csv"), DataError);
  std::istringstream empty("");
  CHECK_THROWS_AS(report(empty, "csv"), DataError);
  std::istringstream ok("n,P,workload,cycles,e_c_pj,e_r_pj,e_a_pj,opj,edp,storage_parts\n");
  CHECK(report(ok, "csv") ==
        "n,P,workload,cycles,e_c_pj,e_r_pj,e_a_pj,opj,edp,storage_parts\n");
  std::istringstream ok2("n,P,workload,cycles,e_c_pj,e_r_pj,e_a_pj,opj,edp,storage_parts\n");
  CHECK_THROWS_AS(report(ok2, "json"), std::invalid_argument);
}
