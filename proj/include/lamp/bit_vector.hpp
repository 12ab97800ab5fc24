#pragma once

// Binary logic vectors and the LAMP primitive operations: and, or, xor, not,
// sls (shift-left crowding of all ones) and orf (OR-fold devectorization).
//
// Coordinate 1 is the leftmost printed bit and lives at bit 0 of word 0.
// Coordinates past len() are padding and are kept at zero by every operation,
// so word-level equality and popcount never see them.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lamp/error.hpp"

namespace lamp {

class BitVector {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;

  // All-zero vector of n coordinates.
  explicit BitVector(std::size_t n) : len_(n), words_(word_count(n), 0) {}

  static BitVector zeros(std::size_t n) { return BitVector(n); }

  static BitVector all_ones(std::size_t n) { return prefix(n, n); }

  // 1^k 0^(n-k)
  static BitVector prefix(std::size_t n, std::size_t k) {
    BitVector v(n);
    k = std::min(k, n);
    const std::size_t full = k / kWordBits;
    for (std::size_t w = 0; w < full; ++w) v.words_[w] = ~word_type{0};
    if (k % kWordBits) v.words_[full] = low_mask(k % kWordBits);
    return v;
  }

  // Builds from raw words; bits past n are cleared.
  static BitVector from_words(std::size_t n, std::span<const word_type> words) {
    BitVector v(n);
    std::copy_n(words.begin(), std::min(words.size(), v.words_.size()), v.words_.begin());
    v.clear_padding();
    return v;
  }

  // Text form: characters '0'/'1', underscores ignored.
  static BitVector parse(std::string_view text) {
    std::size_t n = 0;
    for (char ch : text) {
      if (ch == '0' || ch == '1') {
        ++n;
      } else if (ch != '_') {
        throw ParseError(std::string("invalid binary symbol '") + ch + "'");
      }
    }
    if (n == 0) throw ZeroLength();
    BitVector v(n);
    std::size_t i = 0;
    for (char ch : text) {
      if (ch == '_') continue;
      v.set(i++, ch == '1');
    }
    return v;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  // 0-based coordinate access (coordinate i+1 in printed order).
  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  void set(std::size_t i, bool value = true) noexcept {
    const word_type mask = word_type{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }

  std::span<const word_type> words() const noexcept { return words_; }

  std::size_t count_ones() const noexcept {
    std::size_t c = 0;
    for (word_type w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
  }

  // True when no 0 precedes a 1, i.e. the vector is sls-compacted.
  bool is_prefix() const noexcept { return *this == prefix(len_, count_ones()); }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  static constexpr std::size_t word_count(std::size_t n) noexcept {
    return (n + kWordBits - 1) / kWordBits;
  }

 private:
  template <typename Op>
  friend BitVector zip_words(const BitVector& a, const BitVector& b, Op op);
  friend BitVector vnot(const BitVector& a);

  static constexpr word_type low_mask(std::size_t bits) noexcept {
    return bits >= kWordBits ? ~word_type{0} : (word_type{1} << bits) - 1;
  }

  void clear_padding() noexcept {
    if (len_ % kWordBits) words_.back() &= low_mask(len_ % kWordBits);
  }

  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

template <typename Op>
BitVector zip_words(const BitVector& a, const BitVector& b, Op op) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  BitVector r(a.size());
  for (std::size_t w = 0; w < r.words_.size(); ++w) r.words_[w] = op(a.words_[w], b.words_[w]);
  return r;
}

inline BitVector vand(const BitVector& a, const BitVector& b) {
  return zip_words(a, b, [](auto x, auto y) { return x & y; });
}

inline BitVector vor(const BitVector& a, const BitVector& b) {
  return zip_words(a, b, [](auto x, auto y) { return x | y; });
}

inline BitVector vxor(const BitVector& a, const BitVector& b) {
  return zip_words(a, b, [](auto x, auto y) { return x ^ y; });
}

inline BitVector vnot(const BitVector& a) {
  BitVector r(a.size());
  for (std::size_t w = 0; w < r.words_.size(); ++w) r.words_[w] = ~a.words_[w];
  r.clear_padding();
  return r;
}

// Shift-left crowding: all ones of a packed to the left, 1^k 0^(n-k).
inline BitVector sls(const BitVector& a) { return BitVector::prefix(a.size(), a.count_ones()); }

// OR of every coordinate.
inline bool orf(const BitVector& a) noexcept { return !a.none(); }

inline BitVector operator&(const BitVector& a, const BitVector& b) { return vand(a, b); }
inline BitVector operator|(const BitVector& a, const BitVector& b) { return vor(a, b); }
inline BitVector operator^(const BitVector& a, const BitVector& b) { return vxor(a, b); }
inline BitVector operator~(const BitVector& a) { return vnot(a); }

}  // namespace lamp
