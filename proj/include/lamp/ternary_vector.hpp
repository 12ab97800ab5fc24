#pragma once

// Multivalued vectors over {0, 1, x} and cube intersection.
//
// Each coordinate takes two bits of an underlying BitVector:
//   bit 2i   -> coordinate admits 0
//   bit 2i+1 -> coordinate admits 1
// so 0 = 10, 1 = 01, x = 11 and the empty symbol = 00. Intersection is a plain
// vand of the encodings; a cube is empty iff some pair is 00.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"

namespace lamp {

enum class Symbol : std::uint8_t { Empty = 0b00, Zero = 0b01, One = 0b10, X = 0b11 };

inline char to_char(Symbol s) noexcept {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::One: return '1';
    case Symbol::X: return 'x';
    case Symbol::Empty: break;
  }
  return '-';
}

namespace detail {

inline constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

// Mask of the valid (non padding) bits in word w of a vector of `bits` bits.
inline constexpr std::uint64_t valid_mask(std::size_t w, std::size_t bits) noexcept {
  const std::size_t full = bits / 64;
  if (w < full) return ~std::uint64_t{0};
  const std::size_t rem = bits % 64;
  return rem ? (std::uint64_t{1} << rem) - 1 : 0;
}

// Number of coordinates whose two-bit code equals 00 (empty).
inline std::size_t count_empty_pairs(const BitVector& enc) noexcept {
  std::size_t c = 0;
  const auto words = enc.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t x = words[w];
    c += std::popcount(~(x | (x >> 1)) & kEvenBits & valid_mask(w, enc.size()));
  }
  return c;
}

// Number of coordinates whose two-bit code equals 11 (x).
inline std::size_t count_x_pairs(const BitVector& enc) noexcept {
  std::size_t c = 0;
  for (std::uint64_t x : enc.words()) c += std::popcount(x & (x >> 1) & kEvenBits);
  return c;
}

inline Symbol symbol_at(const BitVector& enc, std::size_t i) noexcept {
  return static_cast<Symbol>((enc.test(2 * i) ? 1 : 0) | (enc.test(2 * i + 1) ? 2 : 0));
}

}  // namespace detail

class TernaryVector {
 public:
  TernaryVector() = default;

  // Text form: '0', '1', 'x' or 'X'; underscores ignored.
  static TernaryVector parse(std::string_view text) {
    std::size_t n = 0;
    for (char ch : text) {
      if (ch == '0' || ch == '1' || ch == 'x' || ch == 'X') {
        ++n;
      } else if (ch != '_') {
        throw ParseError(std::string("invalid ternary symbol '") + ch + "'");
      }
    }
    if (n == 0) throw ZeroLength();
    TernaryVector v;
    v.enc_ = BitVector(2 * n);
    std::size_t i = 0;
    for (char ch : text) {
      if (ch == '_') continue;
      v.put(i++, ch == '0' ? Symbol::Zero : ch == '1' ? Symbol::One : Symbol::X);
    }
    return v;
  }

  static TernaryVector from_binary(const BitVector& b) {
    TernaryVector v;
    v.enc_ = BitVector(2 * b.size());
    for (std::size_t i = 0; i < b.size(); ++i) v.put(i, b.test(i) ? Symbol::One : Symbol::Zero);
    return v;
  }

  std::size_t size() const noexcept { return enc_.size() / 2; }

  Symbol symbol(std::size_t i) const noexcept { return detail::symbol_at(enc_, i); }

  std::size_t card_x() const noexcept { return detail::count_x_pairs(enc_); }

  bool is_binary() const noexcept { return card_x() == 0; }

  // Binary projection; meaningful only when is_binary().
  BitVector to_binary() const {
    BitVector b(size());
    for (std::size_t i = 0; i < size(); ++i) b.set(i, enc_.test(2 * i + 1));
    return b;
  }

  std::string to_string() const {
    std::string s(size(), '?');
    for (std::size_t i = 0; i < size(); ++i) s[i] = to_char(symbol(i));
    return s;
  }

  const BitVector& encoding() const noexcept { return enc_; }

  friend bool operator==(const TernaryVector&, const TernaryVector&) = default;

 private:
  friend class IntersectionResult;

  void put(std::size_t i, Symbol s) noexcept {
    const auto code = static_cast<unsigned>(s);
    enc_.set(2 * i, code & 1u);
    enc_.set(2 * i + 1, code & 2u);
  }

  BitVector enc_;
};

// Coordinatewise cube intersection; may contain the empty symbol.
class IntersectionResult {
 public:
  explicit IntersectionResult(BitVector enc) : enc_(std::move(enc)) {}

  std::size_t size() const noexcept { return enc_.size() / 2; }
  Symbol symbol(std::size_t i) const noexcept { return detail::symbol_at(enc_, i); }

  std::size_t empty_count() const noexcept { return detail::count_empty_pairs(enc_); }
  bool is_empty() const noexcept { return empty_count() != 0; }
  std::size_t card_x() const noexcept { return detail::count_x_pairs(enc_); }

  std::optional<TernaryVector> as_vector() const {
    if (is_empty()) return std::nullopt;
    TernaryVector v;
    v.enc_ = enc_;
    return v;
  }

  // Empty coordinates print as '-'.
  std::string to_string() const {
    std::string s(size(), '?');
    for (std::size_t i = 0; i < size(); ++i) s[i] = to_char(symbol(i));
    return s;
  }

 private:
  BitVector enc_;
};

inline IntersectionResult intersect(const TernaryVector& m, const TernaryVector& a) {
  if (m.size() != a.size()) throw LengthMismatch(m.size(), a.size());
  return IntersectionResult(vand(m.encoding(), a.encoding()));
}

inline std::size_t card_x(const TernaryVector& v) noexcept { return v.card_x(); }

inline std::size_t empty_coord_count(const TernaryVector& m, const TernaryVector& a) {
  return intersect(m, a).empty_count();
}

// The five set-theoretic interaction outcomes of a query m with an associator A.
enum class InteractionClass {
  Equal,
  QueryInsideAssociator,  // m is a proper subcube of A
  AssociatorInsideQuery,  // A is a proper subcube of m
  Overlap,
  Disjoint,
};

inline const char* to_string(InteractionClass c) noexcept {
  switch (c) {
    case InteractionClass::Equal: return "equal";
    case InteractionClass::QueryInsideAssociator: return "query-inside-associator";
    case InteractionClass::AssociatorInsideQuery: return "associator-inside-query";
    case InteractionClass::Overlap: return "overlap";
    case InteractionClass::Disjoint: return "disjoint";
  }
  return "?";
}

inline InteractionClass mirror(InteractionClass c) noexcept {
  if (c == InteractionClass::QueryInsideAssociator) return InteractionClass::AssociatorInsideQuery;
  if (c == InteractionClass::AssociatorInsideQuery) return InteractionClass::QueryInsideAssociator;
  return c;
}

inline InteractionClass classify_interaction(const TernaryVector& m, const TernaryVector& a) {
  const auto meet = intersect(m, a).as_vector();
  if (!meet) return InteractionClass::Disjoint;
  const bool is_m = *meet == m;
  const bool is_a = *meet == a;
  if (is_m && is_a) return InteractionClass::Equal;
  if (is_m) return InteractionClass::QueryInsideAssociator;
  if (is_a) return InteractionClass::AssociatorInsideQuery;
  return InteractionClass::Overlap;
}

}  // namespace lamp
