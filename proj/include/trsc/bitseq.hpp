#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trsc {

// Dynamic bit vector, index 0 first. Backing words are little-endian in bit
// order: bit j lives in words()[j/64] at bit position j%64.
class BitSeq {
 public:
  BitSeq() = default;
  explicit BitSeq(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static BitSeq from_string(std::string_view s) {
    BitSeq b(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] == '1')
        b.set(j, 1);
      else if (s[j] != '0')
        throw std::invalid_argument("BitSeq: expected '0'/'1' characters");
    }
    return b;
  }

  std::size_t size() const { return nbits_; }

  int get(std::size_t j) const {
    check_index(j);
    return static_cast<int>((words_[j >> 6] >> (j & 63)) & 1u);
  }

  void set(std::size_t j, int bit) {
    check_index(j);
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (bit)
      words_[j >> 6] |= mask;
    else
      words_[j >> 6] &= ~mask;
  }

  std::uint64_t popcount() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
  }

  // Ones among the first `prefix` bits.
  std::uint64_t popcount_prefix(std::size_t prefix) const {
    if (prefix > nbits_) throw std::out_of_range("BitSeq: prefix out of range");
    std::uint64_t n = 0;
    std::size_t full = prefix >> 6;
    for (std::size_t w = 0; w < full; ++w) n += static_cast<std::uint64_t>(std::popcount(words_[w]));
    if (prefix & 63) {
      const std::uint64_t mask = (std::uint64_t{1} << (prefix & 63)) - 1;
      n += static_cast<std::uint64_t>(std::popcount(words_[full] & mask));
    }
    return n;
  }

  BitSeq operator&(const BitSeq& o) const {
    if (o.nbits_ != nbits_) throw std::invalid_argument("BitSeq: length mismatch in AND");
    BitSeq r(nbits_);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = words_[w] & o.words_[w];
    return r;
  }

  bool operator==(const BitSeq& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t j = 0; j < nbits_; ++j)
      if (get(j)) s[j] = '1';
    return s;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  // Low word as integer, valid when size() <= 64.
  std::uint64_t as_word() const { return words_.empty() ? 0 : words_[0]; }

 private:
  void check_index(std::size_t j) const {
    if (j >= nbits_) throw std::out_of_range("BitSeq: index out of range");
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace trsc
