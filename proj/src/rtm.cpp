#include "trsc/rtm.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace trsc {

const char* op_cat_name(OpCat c) {
  switch (c) {
    case OpCat::Shift: return "shift";
    case OpCat::Write: return "write";
    case OpCat::Tr: return "tr";
    case OpCat::Read: return "read";
    case OpCat::OutputLogic: return "output_logic";
    case OpCat::Adder: return "adder";
    case OpCat::Align: return "align";
  }
  return "?";
}

void CostLedger::charge(OpCat c, std::uint64_t ops, std::uint64_t cycles, double energy_pj) {
  Entry& e = cat[static_cast<int>(c)];
  e.ops += ops;
  e.cycles += cycles;
  e.energy_pj += energy_pj;
}

void CostLedger::merge(const CostLedger& o) {
  for (int i = 0; i < kNumOpCats; ++i) {
    cat[i].ops += o.cat[i].ops;
    cat[i].cycles += o.cat[i].cycles;
    cat[i].energy_pj += o.cat[i].energy_pj;
  }
}

std::uint64_t CostLedger::total_cycles() const {
  std::uint64_t n = 0;
  for (const Entry& e : cat) n += e.cycles;
  return n;
}

double CostLedger::total_energy_pj() const {
  double n = 0;
  for (const Entry& e : cat) n += e.energy_pj;
  return n;
}

double CostLedger::e_c() const { return cat[static_cast<int>(OpCat::OutputLogic)].energy_pj; }

double CostLedger::e_r() const {
  return cat[static_cast<int>(OpCat::Shift)].energy_pj +
         cat[static_cast<int>(OpCat::Write)].energy_pj +
         cat[static_cast<int>(OpCat::Tr)].energy_pj +
         cat[static_cast<int>(OpCat::Read)].energy_pj;
}

double CostLedger::e_a() const { return cat[static_cast<int>(OpCat::Adder)].energy_pj; }

void CostLedger::write_csv(std::ostream& os) const {
  os << "category,ops,cycles,energy_pj\n";
  for (int i = 0; i < kNumOpCats; ++i)
    os << op_cat_name(static_cast<OpCat>(i)) << ',' << cat[i].ops << ','
       << cat[i].cycles << ',' << cat[i].energy_pj << '\n';
}

void RtmConfig::validate() const {
  if (domains_per_track <= 0 || parts_per_track <= 0 || valid_per_part <= 0)
    throw std::invalid_argument("RtmConfig: sizes must be positive");
  if (trd_domains != valid_per_part + 2)
    throw std::invalid_argument("RtmConfig: trd_domains must equal valid_per_part + 2");
  if (used_domains() > domains_per_track)
    throw std::invalid_argument("RtmConfig: used domains exceed domains_per_track");
  if (shift_cycles < 0 || write_cycles < 0 || tr_cycles < 0 || read_cycles < 0)
    throw std::invalid_argument("RtmConfig: negative latency");
  if (shift_energy_pj < 0 || write_energy_pj < 0 || tr_energy_pj < 0 || read_energy_pj < 0)
    throw std::invalid_argument("RtmConfig: negative energy");
  if (tracks_per_dbc <= 0 || (tracks_per_dbc & (tracks_per_dbc - 1)) != 0)
    throw std::invalid_argument("RtmConfig: tracks_per_dbc must be a power of two");
}

RtmConfig RtmConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("RtmConfig: cannot open " + path);
  return from_stream(f);
}

RtmConfig RtmConfig::from_stream(std::istream& is) {
  RtmConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, value;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("RtmConfig: line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    try {
      if (key == "domains_per_track") cfg.domains_per_track = std::stoi(value);
      else if (key == "parts_per_track") cfg.parts_per_track = std::stoi(value);
      else if (key == "valid_per_part") cfg.valid_per_part = std::stoi(value);
      else if (key == "trd_domains") cfg.trd_domains = std::stoi(value);
      else if (key == "shift_cycles") cfg.shift_cycles = std::stoi(value);
      else if (key == "write_cycles") cfg.write_cycles = std::stoi(value);
      else if (key == "tr_cycles") cfg.tr_cycles = std::stoi(value);
      else if (key == "shift_energy_pj") cfg.shift_energy_pj = std::stod(value);
      else if (key == "write_energy_pj") cfg.write_energy_pj = std::stod(value);
      else if (key == "tr_energy_pj") cfg.tr_energy_pj = std::stod(value);
      else if (key == "ports_per_track") cfg.ports_per_track = std::stoi(value);
      else if (key == "tracks_per_dbc") cfg.tracks_per_dbc = std::stoi(value);
      else if (key == "read_cycles") cfg.read_cycles = std::stoi(value);
      else if (key == "read_energy_pj") cfg.read_energy_pj = std::stod(value);
      else if (key == "charge_per_track") cfg.charge_per_track = (value == "1" || value == "true");
      else
        throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("RtmConfig: line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RtmDbc::RtmDbc(const RtmConfig& cfg, int tracks) : cfg_(cfg), tracks_(tracks) {
  cfg_.validate();
  if (tracks <= 0) throw std::invalid_argument("RtmDbc: tracks must be positive");
  domains_.assign(tracks_, BitSeq(static_cast<std::size_t>(cfg_.domains_per_track)));
  fill_.assign(static_cast<std::size_t>(cfg_.parts_per_track), 0);
}

void RtmDbc::check_part(int part) const {
  if (part < 0 || part >= cfg_.parts_per_track)
    throw std::out_of_range("RtmDbc: part index out of range");
}

int RtmDbc::fill(int part) const {
  check_part(part);
  return fill_[part];
}

bool RtmDbc::domain(int track, int pos) const {
  if (track < 0 || track >= tracks_) throw std::out_of_range("RtmDbc: track out of range");
  return domains_[track].get(static_cast<std::size_t>(pos)) != 0;
}

void RtmDbc::write_transposed(int part, const BitSeq& segment, CostLedger& ledger) {
  if (static_cast<int>(segment.size()) != tracks_)
    throw std::invalid_argument("write_transposed: segment length must equal track count");
  write_transposed(part, segment.as_word(), ledger);
}

void RtmDbc::write_transposed(int part, std::uint64_t segment_bits, CostLedger& ledger) {
  check_part(part);
  if (tracks_ > 64)
    throw std::invalid_argument("write_transposed: word form supports at most 64 tracks");
  if (fill_[part] >= cfg_.valid_per_part)
    throw std::overflow_error("write_transposed: part is full, TR-drain first");
  const int pos = slot_pos(part, fill_[part]);
  for (int t = 0; t < tracks_; ++t)
    domains_[t].set(static_cast<std::size_t>(pos), static_cast<int>((segment_bits >> t) & 1u));
  ++fill_[part];
  const std::uint64_t n = cfg_.charge_per_track ? static_cast<std::uint64_t>(tracks_) : 1;
  ledger.charge(OpCat::Shift, n, static_cast<std::uint64_t>(cfg_.shift_cycles),
                static_cast<double>(n) * cfg_.shift_energy_pj);
  ledger.charge(OpCat::Write, n, static_cast<std::uint64_t>(cfg_.write_cycles),
                static_cast<double>(n) * cfg_.write_energy_pj);
}

void RtmDbc::write_bit(int track, int part, int bit, CostLedger& ledger) {
  check_part(part);
  if (track < 0 || track >= tracks_) throw std::out_of_range("write_bit: track out of range");
  if (fill_[part] >= cfg_.valid_per_part)
    throw std::overflow_error("write_bit: part is full, TR-drain first");
  domains_[track].set(static_cast<std::size_t>(slot_pos(part, fill_[part])), bit);
  ++fill_[part];
  ledger.charge(OpCat::Shift, 1, static_cast<std::uint64_t>(cfg_.shift_cycles), cfg_.shift_energy_pj);
  ledger.charge(OpCat::Write, 1, static_cast<std::uint64_t>(cfg_.write_cycles), cfg_.write_energy_pj);
}

void RtmDbc::pad_part(int part, CostLedger& ledger) {
  check_part(part);
  const int pads = cfg_.valid_per_part - fill_[part];
  if (pads <= 0) return;
  // Valid domains start zeroed (cleared on drain), so padding only needs the
  // fill bookkeeping plus the forced-store energy.
  fill_[part] = cfg_.valid_per_part;
  const std::uint64_t n =
      static_cast<std::uint64_t>(pads) * (cfg_.charge_per_track ? tracks_ : 1);
  ledger.charge(OpCat::Write, n, 0, static_cast<double>(n) * cfg_.write_energy_pj);
}

int RtmDbc::transverse_read(int track, int part) const {
  check_part(part);
  if (track < 0 || track >= tracks_)
    throw std::out_of_range("transverse_read: track out of range");
  int count = 0;
  for (int slot = 0; slot < cfg_.valid_per_part; ++slot)
    count += domains_[track].get(static_cast<std::size_t>(slot_pos(part, slot)));
  return count;
}

int RtmDbc::transverse_read(int track, int part, CostLedger& ledger) const {
  const int count = transverse_read(track, part);
  ledger.charge(OpCat::Tr, 1, static_cast<std::uint64_t>(cfg_.tr_cycles), cfg_.tr_energy_pj);
  return count;
}

std::vector<std::vector<int>> RtmDbc::tr_wave(const std::vector<int>& parts,
                                              CostLedger& ledger) const {
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (parts[i] == parts[j] || parts[i] + 1 == parts[j] || parts[j] + 1 == parts[i])
        throw std::invalid_argument("tr_wave: adjacent parts share a boundary domain");
  std::vector<std::vector<int>> counts(static_cast<std::size_t>(tracks_),
                                       std::vector<int>(parts.size(), 0));
  for (int t = 0; t < tracks_; ++t)
    for (std::size_t p = 0; p < parts.size(); ++p)
      counts[t][p] = transverse_read(t, parts[p]);
  ledger.charge(OpCat::Tr, static_cast<std::uint64_t>(tracks_) * parts.size(),
                static_cast<std::uint64_t>(cfg_.tr_cycles),
                static_cast<double>(tracks_) * static_cast<double>(parts.size()) * cfg_.tr_energy_pj);
  return counts;
}

std::vector<std::vector<int>> RtmDbc::pingpong_waves(int parts) {
  std::vector<std::vector<int>> waves;
  std::vector<int> even, odd;
  for (int p = 0; p < parts; p += 2) even.push_back(p);
  for (int p = 1; p < parts; p += 2) odd.push_back(p);
  if (!even.empty()) waves.push_back(std::move(even));
  if (!odd.empty()) waves.push_back(std::move(odd));
  return waves;
}

std::vector<std::vector<int>> RtmDbc::tr_all_parts(CostLedger& ledger) const {
  std::vector<std::vector<int>> counts(static_cast<std::size_t>(tracks_),
                                       std::vector<int>(static_cast<std::size_t>(parts()), 0));
  for (const auto& wave : pingpong_waves(parts())) {
    const auto wave_counts = tr_wave(wave, ledger);
    for (int t = 0; t < tracks_; ++t)
      for (std::size_t i = 0; i < wave.size(); ++i) counts[t][wave[i]] = wave_counts[t][i];
  }
  return counts;
}

void RtmDbc::shift(int steps, CostLedger& ledger) {
  if (steps == 0) return;
  const int slack = cfg_.domains_per_track - cfg_.used_domains();
  const int target = shift_pos_ + steps;
  if (target < 0 || target > slack)
    throw std::out_of_range("shift: position leaves track bounds");
  shift_pos_ = target;
  const std::uint64_t k = static_cast<std::uint64_t>(steps < 0 ? -steps : steps);
  const std::uint64_t n = k * (cfg_.charge_per_track ? tracks_ : 1);
  ledger.charge(OpCat::Shift, n, k * static_cast<std::uint64_t>(cfg_.shift_cycles),
                static_cast<double>(n) * cfg_.shift_energy_pj);
}

void RtmDbc::clear_part(int part) {
  check_part(part);
  for (int t = 0; t < tracks_; ++t)
    for (int slot = 0; slot < cfg_.valid_per_part; ++slot)
      domains_[t].set(static_cast<std::size_t>(slot_pos(part, slot)), 0);
  fill_[part] = 0;
}

void RtmDbc::clear() {
  for (int p = 0; p < parts(); ++p) clear_part(p);
}

}  // namespace trsc
