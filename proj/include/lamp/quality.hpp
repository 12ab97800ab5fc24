#pragma once

// Interaction-quality criteria between a query m and an associator A, in three
// forms:
//   quality_arith    normalized mean of code distance and two memberships,
//                    exact rationals over ternary vectors (1 = identical)
//   criterion_arith  integer sum of xor distance and two non-memberships
//                    over binary vectors (0 = identical)
//   criterion_vector the same three terms kept as logic vectors, OR-ed and
//                    compacted with sls; no arithmetic at all
// plus choose_best, the and/xor/orf decision between two compacted vectors.

#include <compare>
#include <cstddef>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "lamp/bit_vector.hpp"
#include "lamp/error.hpp"
#include "lamp/ternary_vector.hpp"

namespace lamp {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

struct QualityScoreNorm {
  Rational value;
  Rational d;
  Rational mu_m_in_a;
  Rational mu_a_in_m;

  friend bool operator==(const QualityScoreNorm&, const QualityScoreNorm&) = default;
};

struct QualityScoreInt {
  std::size_t value = 0;
  std::size_t d_card = 0;
  std::size_t nonmembership_m_in_a = 0;
  std::size_t nonmembership_a_in_m = 0;

  friend bool operator==(const QualityScoreInt&, const QualityScoreInt&) = default;
};

struct QualityVector {
  BitVector m_and_a;
  BitVector not_m_and_a;
  BitVector d_vec;
  BitVector mu_m_in_a_vec;
  BitVector mu_a_in_m_vec;
  BitVector q_vec;
  BitVector q_compacted;
};

// (k, n): k ones in the compacted quality vector of width n. Smaller k is better.
struct QualityIndex {
  std::size_t k = 0;
  std::size_t n = 0;

  friend bool operator==(const QualityIndex&, const QualityIndex&) = default;
  friend auto operator<=>(const QualityIndex&, const QualityIndex&) = default;
};

inline std::string to_string(const QualityIndex& q) {
  return std::to_string(q.k) + "/" + std::to_string(q.n);
}

namespace detail {

// 2^e for a possibly negative exponent.
inline Rational pow2(long long e) {
  using boost::multiprecision::cpp_int;
  const cpp_int one = 1;
  return e >= 0 ? Rational(one << static_cast<unsigned>(e))
                : Rational(one, one << static_cast<unsigned>(-e));
}

}  // namespace detail

inline QualityScoreNorm quality_arith(const TernaryVector& m, const TernaryVector& a) {
  if (m.size() != a.size()) throw LengthMismatch(m.size(), a.size());
  const std::size_t n = m.size();
  if (n == 0) throw ZeroLength();

  const auto meet = intersect(m, a);
  QualityScoreNorm s;
  s.d = Rational(static_cast<long long>(n - meet.empty_count()), static_cast<long long>(n));
  if (!meet.is_empty()) {
    const auto common = static_cast<long long>(meet.card_x());
    s.mu_m_in_a = detail::pow2(common - static_cast<long long>(a.card_x()));
    s.mu_a_in_m = detail::pow2(common - static_cast<long long>(m.card_x()));
  }
  s.value = (s.d + s.mu_m_in_a + s.mu_a_in_m) / 3;
  return s;
}

inline QualityScoreInt criterion_arith(const BitVector& m, const BitVector& a) {
  const BitVector both = vand(m, a);
  const std::size_t common = both.count_ones();
  QualityScoreInt s;
  s.d_card = vxor(m, a).count_ones();
  s.nonmembership_m_in_a = a.count_ones() - common;
  s.nonmembership_a_in_m = m.count_ones() - common;
  s.value = s.d_card + s.nonmembership_m_in_a + s.nonmembership_a_in_m;
  return s;
}

// Non-membership terms use a AND NOT(m AND a) and m AND NOT(m AND a).
inline QualityVector criterion_vector(const BitVector& m, const BitVector& a) {
  QualityVector q;
  q.m_and_a = vand(m, a);
  q.not_m_and_a = vnot(q.m_and_a);
  q.d_vec = vxor(m, a);
  q.mu_m_in_a_vec = vand(a, q.not_m_and_a);
  q.mu_a_in_m_vec = vand(m, q.not_m_and_a);
  q.q_vec = vor(q.d_vec, vor(q.mu_m_in_a_vec, q.mu_a_in_m_vec));
  q.q_compacted = sls(q.q_vec);
  return q;
}

inline QualityIndex quality_index(const BitVector& m, const BitVector& a) {
  const auto q = criterion_vector(m, a);
  return {q.q_compacted.count_ones(), q.q_compacted.size()};
}

struct Choice {
  BitVector winner;
  bool flag = false;  // false: q1 kept, true: q2 taken
};

// Picks the better of two compacted quality vectors with three operations:
// flag = orf((q1 AND q2) XOR q1). Equal inputs keep q1.
inline Choice choose_best(const BitVector& q1, const BitVector& q2) {
  if (q1.size() != q2.size()) throw LengthMismatch(q1.size(), q2.size());
  if (!q1.is_prefix() || !q2.is_prefix()) throw NotCompacted();
  const bool flag = orf(vxor(vand(q1, q2), q1));
  return {flag ? q2 : q1, flag};
}

}  // namespace lamp
