#include <random>
#include <string>

#include <gtest/gtest.h>

#include "lamp/quality.hpp"
#include "oracles.hpp"

using lamp::BitVector;
using lamp::Rational;
using lamp::TernaryVector;

namespace {

BitVector bv(const std::string& s) { return BitVector::parse(s); }
TernaryVector tv(const std::string& s) { return TernaryVector::parse(s); }

std::string ones_at(std::size_t n, std::initializer_list<std::size_t> coords) {
  std::string s(n, '0');
  for (auto c : coords) s[c - 1] = '1';
  return s;
}

const std::string kM = "110011001100";
const std::string kA = "000011110101";

}  // namespace

TEST(QualityArith, HalfSpaceScenarioFiveSixths) {
  const auto q = lamp::quality_arith(tv("x0"), tv("xx"));
  EXPECT_EQ(q.d, Rational(1));
  EXPECT_EQ(q.mu_m_in_a, Rational(1, 2));
  EXPECT_EQ(q.mu_a_in_m, Rational(1));
  EXPECT_EQ(q.value, Rational(5, 6));
  // Mirror case: m & A = A, half of m's space.
  EXPECT_EQ(lamp::quality_arith(tv("xx"), tv("x0")).value, Rational(5, 6));
}

TEST(QualityArith, HalfOfBothTwoThirds) {
  const auto q = lamp::quality_arith(tv("x1"), tv("1x"));
  EXPECT_EQ(q.d, Rational(1));
  EXPECT_EQ(q.mu_m_in_a, Rational(1, 2));
  EXPECT_EQ(q.mu_a_in_m, Rational(1, 2));
  EXPECT_EQ(q.value, Rational(2, 3));
}

TEST(QualityArith, EqualIsOneClashIsZero) {
  EXPECT_EQ(lamp::quality_arith(tv("1x0x"), tv("1x0x")).value, Rational(1));
  const auto z = lamp::quality_arith(tv("0101"), tv("1010"));
  EXPECT_EQ(z.value, Rational(0));
  EXPECT_EQ(z.mu_m_in_a, Rational(0));
  EXPECT_EQ(z.mu_a_in_m, Rational(0));
}

TEST(QualityArith, PartialClashKeepsDistanceOnly) {
  // One clashing coordinate of three: d = 2/3, both memberships 0.
  const auto q = lamp::quality_arith(tv("x10"), tv("100"));
  EXPECT_EQ(q.d, Rational(2, 3));
  EXPECT_EQ(q.value, Rational(2, 9));
}

TEST(QualityArith, Errors) {
  EXPECT_THROW(lamp::quality_arith(tv("x"), tv("xx")), lamp::LengthMismatch);
  EXPECT_THROW(lamp::quality_arith(TernaryVector{}, TernaryVector{}), lamp::ZeroLength);
}

TEST(QualityArith, WideVectorsStayExact) {
  // 200 x's against 200 binary coordinates: mu(A in m) = 2^-200, no overflow.
  const std::string xs(200, 'x'), zs(200, '0');
  const auto q = lamp::quality_arith(tv(xs), tv(zs));
  EXPECT_EQ(q.mu_m_in_a, Rational(1));
  const boost::multiprecision::cpp_int one = 1;
  EXPECT_EQ(q.mu_a_in_m, Rational(one, one << 200));
}

TEST(CriterionArith, WorkedPair) {
  const auto s = lamp::criterion_arith(bv(kM), bv(kA));
  const auto o = oracle::int_criterion(kM, kA);
  EXPECT_EQ(s.d_card, 6u);
  EXPECT_EQ(s.nonmembership_m_in_a, 3u);
  EXPECT_EQ(s.nonmembership_a_in_m, 3u);
  EXPECT_EQ(s.value, 12u);
  EXPECT_EQ(s.value, o.value());
}

TEST(CriterionArith, EqualAndOpposite) {
  EXPECT_EQ(lamp::criterion_arith(bv("1011"), bv("1011")).value, 0u);
  const auto s = lamp::criterion_arith(bv("1111"), bv("0000"));
  const auto o = oracle::int_criterion("1111", "0000");
  EXPECT_EQ((std::array{s.d_card, s.nonmembership_m_in_a, s.nonmembership_a_in_m}),
            (std::array<std::size_t, 3>{4, 0, 4}));
  EXPECT_EQ(s.value, 8u);
  EXPECT_EQ(o.value(), 8u);
  EXPECT_THROW(lamp::criterion_arith(bv("1"), bv("10")), lamp::LengthMismatch);
}

TEST(CriterionVector, WorkedTableRows) {
  const auto q = lamp::criterion_vector(bv(kM), bv(kA));
  EXPECT_EQ(q.m_and_a.to_string(), ones_at(12, {5, 6, 10}));
  EXPECT_EQ(q.d_vec.count_ones(), 6u);
  EXPECT_EQ(q.mu_a_in_m_vec.to_string(), ones_at(12, {1, 2, 9}));
  EXPECT_EQ(q.mu_m_in_a_vec.to_string(), ones_at(12, {7, 8, 12}));
  EXPECT_EQ(q.q_vec, q.d_vec);
  EXPECT_EQ(q.q_compacted.to_string(), "111111000000");
}

TEST(CriterionVector, EqualGivesZeros) {
  const auto v = bv("0110");
  const auto q = lamp::criterion_vector(v, v);
  EXPECT_TRUE(q.d_vec.none());
  EXPECT_TRUE(q.mu_m_in_a_vec.none());
  EXPECT_TRUE(q.mu_a_in_m_vec.none());
  EXPECT_TRUE(q.q_vec.none());
}

TEST(CriterionVector, TwoBitOpposites) {
  const auto q = lamp::criterion_vector(bv("10"), bv("01"));
  EXPECT_EQ(q.d_vec, bv("11"));
  EXPECT_EQ(q.mu_m_in_a_vec, bv("01"));
  EXPECT_EQ(q.mu_a_in_m_vec, bv("10"));
  EXPECT_EQ(q.q_vec, bv("11"));
}

TEST(QualityIndex, Examples) {
  EXPECT_EQ(lamp::quality_index(bv(kM), bv(kA)), (lamp::QualityIndex{6, 12}));
  EXPECT_EQ(lamp::quality_index(bv(kM), bv(kM)), (lamp::QualityIndex{0, 12}));
  EXPECT_EQ(lamp::quality_index(bv("1111"), bv("0000")), (lamp::QualityIndex{4, 4}));
  EXPECT_THROW(lamp::quality_index(bv("11"), bv("0")), lamp::LengthMismatch);
}

TEST(ChooseBest, SixBeatsEight) {
  const auto q1 = BitVector::prefix(12, 6);
  const auto q2 = BitVector::prefix(12, 8);
  auto c = lamp::choose_best(q1, q2);
  EXPECT_FALSE(c.flag);
  EXPECT_EQ(c.winner, q1);

  c = lamp::choose_best(q2, q1);
  EXPECT_TRUE(c.flag);
  EXPECT_EQ(c.winner, q1);
}

TEST(ChooseBest, TieKeepsFirst) {
  const auto q = BitVector::prefix(9, 4);
  const auto c = lamp::choose_best(q, q);
  EXPECT_FALSE(c.flag);
  EXPECT_EQ(c.winner, q);
}

TEST(ChooseBest, RejectsUncompactedAndMismatched) {
  EXPECT_THROW(lamp::choose_best(bv("0110"), bv("1100")), lamp::NotCompacted);
  EXPECT_THROW(lamp::choose_best(bv("1100"), bv("1010")), lamp::NotCompacted);
  EXPECT_THROW(lamp::choose_best(bv("1100"), bv("110")), lamp::LengthMismatch);
}

TEST(QualityProperty, BinaryCollapseExhaustive) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = oracle::all_strings(n, "01");
    for (const auto& ms : all) {
      for (const auto& as : all) {
        const auto m = bv(ms), a = bv(as);
        const auto q = lamp::criterion_vector(m, a);
        ASSERT_EQ(q.q_vec, lamp::vxor(m, a));
        ASSERT_EQ(q.mu_m_in_a_vec, lamp::vand(a, lamp::vnot(m)));
        ASSERT_EQ(q.mu_a_in_m_vec, lamp::vand(m, lamp::vnot(a)));
        ASSERT_TRUE(lamp::vand(q.mu_m_in_a_vec, q.mu_a_in_m_vec).none());
        ASSERT_EQ(lamp::vor(q.mu_m_in_a_vec, q.mu_a_in_m_vec), q.d_vec);
        ASSERT_EQ(q.q_compacted.to_string(), oracle::prefix(n, oracle::hamming(ms, as)));
        const auto s = lamp::criterion_arith(m, a);
        ASSERT_EQ(s.value, 2 * oracle::hamming(ms, as));
        ASSERT_EQ(s.value, oracle::int_criterion(ms, as).value());
        ASSERT_EQ(s.value == 0, ms == as);
      }
    }
  }
}

TEST(QualityProperty, BinaryCollapseRandomWide) {
  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng() % 4096;
    const auto m = bv(oracle::random_bits(rng, n)), a = bv(oracle::random_bits(rng, n));
    const auto q = lamp::criterion_vector(m, a);
    ASSERT_EQ(q.q_vec, lamp::vxor(m, a));
    ASSERT_TRUE(lamp::vand(q.mu_m_in_a_vec, q.mu_a_in_m_vec).none());
  }
}

TEST(QualityProperty, RankingConsistency) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::size_t n = 1 + rng() % 40;
    const auto m = bv(oracle::random_bits(rng, n));
    const auto a1 = bv(oracle::random_bits(rng, n));
    const auto a2 = bv(oracle::random_bits(rng, n));
    const bool by_int = lamp::criterion_arith(m, a1).value < lamp::criterion_arith(m, a2).value;
    const bool by_vec = lamp::quality_index(m, a1).k < lamp::quality_index(m, a2).k;
    ASSERT_EQ(by_int, by_vec);
  }
}

TEST(QualityProperty, ChooseBestPicksFewerOnes) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t k1 = 0; k1 <= n; ++k1) {
      for (std::size_t k2 = 0; k2 <= n; ++k2) {
        const auto c = lamp::choose_best(BitVector::prefix(n, k1), BitVector::prefix(n, k2));
        ASSERT_EQ(c.flag, k2 < k1);
        ASSERT_EQ(c.winner.count_ones(), std::min(k1, k2));
      }
    }
  }
}

TEST(QualityProperty, MembershipMatchesPointSets) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = oracle::all_strings(n, "01x");
    for (const auto& ms : all) {
      const auto pm = oracle::pts(ms);
      for (const auto& as : all) {
        const auto pa = oracle::pts(as);
        const auto common = oracle::meet(pm, pa);
        const auto q = lamp::quality_arith(tv(ms), tv(as));
        if (common.empty()) {
          ASSERT_EQ(q.mu_m_in_a, Rational(0));
          ASSERT_EQ(q.mu_a_in_m, Rational(0));
        } else {
          const auto c = static_cast<long long>(common.size());
          ASSERT_EQ(q.mu_m_in_a, Rational(c, static_cast<long long>(pa.size()))) << ms << " " << as;
          ASSERT_EQ(q.mu_a_in_m, Rational(c, static_cast<long long>(pm.size())));
        }
        std::size_t clashes = 0;
        for (std::size_t i = 0; i < n; ++i)
          clashes += (ms[i] == '0' && as[i] == '1') || (ms[i] == '1' && as[i] == '0');
        ASSERT_EQ(q.d, Rational(static_cast<long long>(n - clashes), static_cast<long long>(n)));
        ASSERT_EQ(q.value, (q.d + q.mu_m_in_a + q.mu_a_in_m) / 3);
        ASSERT_GE(q.value, Rational(0));
        ASSERT_LE(q.value, Rational(1));
      }
    }
  }
}
