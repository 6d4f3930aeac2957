#include "doctest.h"
#include "trsc/rtm.hpp"

#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

using namespace trsc;

TEST_CASE("ledger buckets cover the total energy") {
  CostLedger led;
  led.charge(OpCat::Shift, 1, 2, 0.3);
  led.charge(OpCat::OutputLogic, 4, 4, 0.28);
  led.charge(OpCat::Adder, 63, 3, 31.1);
  led.charge(OpCat::Tr, 64, 5, 11.2);
  CHECK(led.e_c() + led.e_r() + led.e_a() == doctest::Approx(led.total_energy_pj()));
  CHECK(led.total_cycles() == 14);
}

TEST_CASE("ledger merge is associative and commutative") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> cat(0, kNumOpCats - 1);
  std::uniform_int_distribution<std::uint64_t> num(0, 100);
  for (int it = 0; it < 200; ++it) {
    CostLedger a, b, c;
    for (CostLedger* led : {&a, &b, &c})
      for (int i = 0; i < 5; ++i)
        led->charge(static_cast<OpCat>(cat(rng)), num(rng), num(rng), 0.25 * num(rng));
    CostLedger ab_c = a;
    ab_c.merge(b);
    ab_c.merge(c);
    CostLedger bc = b;
    bc.merge(c);
    CostLedger a_bc = a;
    a_bc.merge(bc);
    CostLedger ba = b;
    ba.merge(a);
    for (int i = 0; i < kNumOpCats; ++i) {
      CHECK(ab_c.cat[i].ops == a_bc.cat[i].ops);
      CHECK(ab_c.cat[i].cycles == a_bc.cat[i].cycles);
      CHECK(ab_c.cat[i].energy_pj == doctest::Approx(a_bc.cat[i].energy_pj));
    }
    CostLedger ab = a;
    ab.merge(b);
    for (int i = 0; i < kNumOpCats; ++i) CHECK(ab.cat[i].ops == ba.cat[i].ops);
  }
}

TEST_CASE("default geometry") {
  RtmConfig cfg;
  cfg.validate();
  CHECK(cfg.used_domains() == 193);
  CHECK(cfg.part_stride() == 6);
  CHECK(cfg.domains_per_track - cfg.used_domains() == 63);
}

TEST_CASE("TR equals the window popcount under randomized traffic") {
  RtmConfig cfg;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> part_d(0, cfg.parts_per_track - 1);
  std::uniform_int_distribution<std::uint64_t> seg_d;
  RtmDbc dbc(cfg, 8);
  CostLedger led;
  std::vector<std::vector<int>> expect(8, std::vector<int>(cfg.parts_per_track, 0));
  for (int it = 0; it < 2000; ++it) {
    const int part = part_d(rng);
    if (dbc.fill(part) == cfg.valid_per_part) {
      for (int t = 0; t < 8; ++t) {
        CHECK(dbc.transverse_read(t, part) == expect[t][part]);
        expect[t][part] = 0;
      }
      dbc.clear_part(part);
      continue;
    }
    const std::uint64_t seg = seg_d(rng) & 0xff;
    dbc.write_transposed(part, seg, led);
    for (int t = 0; t < 8; ++t) expect[t][part] += static_cast<int>((seg >> t) & 1);
  }
  for (int p = 0; p < cfg.parts_per_track; ++p)
    for (int t = 0; t < 8; ++t) CHECK(dbc.transverse_read(t, p) == expect[t][p]);
}

TEST_CASE("boundary domains stay zero") {
  RtmConfig cfg;
  RtmDbc dbc(cfg, 4);
  CostLedger led;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> part_d(0, cfg.parts_per_track - 1);
  for (int it = 0; it < 500; ++it) {
    const int part = part_d(rng);
    if (dbc.fill(part) == cfg.valid_per_part) dbc.clear_part(part);
    dbc.write_transposed(part, 0xf, led);
  }
  for (int t = 0; t < 4; ++t)
    for (int pos = 0; pos < cfg.used_domains(); pos += cfg.part_stride())
      CHECK_FALSE(dbc.domain(t, pos));
}

TEST_CASE("ping-pong waves never contain adjacent parts") {
  for (int parts = 1; parts <= 32; ++parts) {
    const auto waves = RtmDbc::pingpong_waves(parts);
    CHECK(waves.size() == (parts > 1 ? 2 : 1));
    int seen = 0;
    for (const auto& wave : waves) {
      for (std::size_t i = 0; i < wave.size(); ++i)
        for (std::size_t j = i + 1; j < wave.size(); ++j)
          CHECK(std::abs(wave[i] - wave[j]) >= 2);
      seen += static_cast<int>(wave.size());
    }
    CHECK(seen == parts);
  }
}

TEST_CASE("wave accounting charges one TR window per wave") {
  RtmDbc dbc(RtmConfig{}, 64);
  CostLedger led;
  for (int p = 0; p < 32; ++p) {
    CostLedger scratch;
    dbc.write_transposed(p, ~std::uint64_t{0}, scratch);
  }
  dbc.tr_all_parts(led);
  CHECK(led.cat[static_cast<int>(OpCat::Tr)].cycles == 10);  // two waves
  CHECK(led.cat[static_cast<int>(OpCat::Tr)].ops == 64u * 32u);
  CHECK_THROWS_AS(dbc.tr_wave({3, 4}, led), std::invalid_argument);
}

TEST_CASE("writes to a full part are rejected until drained") {
  RtmDbc dbc(RtmConfig{}, 4);
  CostLedger led;
  for (int i = 0; i < 5; ++i) dbc.write_transposed(0, 0xf, led);
  CHECK_THROWS_AS(dbc.write_transposed(0, 0xf, led), std::overflow_error);
  CHECK_THROWS_AS(dbc.write_bit(0, 0, 1, led), std::overflow_error);
  dbc.clear_part(0);
  dbc.write_transposed(0, 0x1, led);
  CHECK(dbc.fill(0) == 1);
}

TEST_CASE("padding completes the part without write latency") {
  RtmDbc dbc(RtmConfig{}, 4);
  CostLedger led;
  dbc.write_transposed(0, 0xf, led);
  CostLedger pad_led;
  dbc.pad_part(0, pad_led);
  CHECK(dbc.fill(0) == 5);
  CHECK(pad_led.cat[static_cast<int>(OpCat::Write)].ops == 4);
  CHECK(pad_led.cat[static_cast<int>(OpCat::Write)].cycles == 0);
  CHECK(dbc.transverse_read(0, 0) == 1);
}

TEST_CASE("shift is bounded by the track slack") {
  RtmDbc dbc(RtmConfig{}, 4);
  CostLedger led;
  dbc.shift(63, led);
  CHECK(dbc.shift_position() == 63);
  CHECK_THROWS_AS(dbc.shift(1, led), std::out_of_range);
  dbc.shift(-63, led);
  CHECK_THROWS_AS(dbc.shift(-1, led), std::out_of_range);
  CHECK(led.cat[static_cast<int>(OpCat::Shift)].cycles == 2u * 126u);
}

TEST_CASE("config parsing") {
  std::istringstream good("shift_cycles = 3\ntr_energy_pj = 0.2\n# comment\n\nvalid_per_part=5\n");
  const RtmConfig cfg = RtmConfig::from_stream(good);
  CHECK(cfg.shift_cycles == 3);
  CHECK(cfg.tr_energy_pj == doctest::Approx(0.2));

  std::istringstream unknown("bogus_key=1\n");
  bool threw = false;
  try {
    RtmConfig::from_stream(unknown);
  } catch (const std::invalid_argument& e) {
    threw = true;
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  CHECK(threw);
  std::istringstream noeq("shift_cycles\n3\n");
  CHECK_THROWS_AS(RtmConfig::from_stream(noeq), std::invalid_argument);
  std::istringstream bad_geom("trd_domains=9\n");
  CHECK_THROWS_AS(RtmConfig::from_stream(bad_geom), std::invalid_argument);
}
