#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpf {

/// Fixed-width bit vector packed into 64-bit words. Bit i of a Pauli string
/// corresponds to qubit i, with qubit 0 the leftmost character in text form.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::uint32_t n_bits) : n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {}

  std::uint32_t size() const { return n_bits_; }

  bool get(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::uint32_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::uint32_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool any() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return true;
    }
    return false;
  }

  bool none() const { return !any(); }

  std::uint32_t popcount() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or -1 when empty.
  int lowest_set_bit() const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      if (words_[wi] != 0) {
        return static_cast<int>(wi * 64 + std::countr_zero(words_[wi]));
      }
    }
    return -1;
  }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_bits_ == b.n_bits_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

  /// Lexicographic order on the bit string b_0 b_1 ... b_{n-1}.
  friend bool lex_less(const BitVec& a, const BitVec& b) {
    for (std::uint32_t i = 0; i < a.n_bits_ && i < b.n_bits_; ++i) {
      const bool ba = a.get(i), bb = b.get(i);
      if (ba != bb) return bb;
    }
    return a.n_bits_ < b.n_bits_;
  }

  std::string str() const {
    std::string s(n_bits_, '0');
    for (std::uint32_t i = 0; i < n_bits_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  static BitVec from_str(const std::string& s) {
    BitVec v(static_cast<std::uint32_t>(s.size()));
    for (std::uint32_t i = 0; i < v.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("bit string may contain only 0 and 1");
      }
    }
    return v;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::uint32_t n_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::uint32_t and_popcount(const BitVec& a, const BitVec& b) {
  std::uint32_t c = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    c += static_cast<std::uint32_t>(std::popcount(wa[i] & wb[i]));
  }
  return c;
}

inline bool and_parity(const BitVec& a, const BitVec& b) { return and_popcount(a, b) & 1u; }

}  // namespace cpf
