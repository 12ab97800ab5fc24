#include <string>

#include <gtest/gtest.h>

#include "lamp/ternary_vector.hpp"
#include "oracles.hpp"

using lamp::InteractionClass;
using lamp::TernaryVector;

namespace {

TernaryVector tv(const std::string& s) { return TernaryVector::parse(s); }

}  // namespace

TEST(TernaryVector, ParseAndPrint) {
  auto v = tv("10X_x");
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v.to_string(), "10xx");
  EXPECT_EQ(v.symbol(0), lamp::Symbol::One);
  EXPECT_EQ(v.symbol(1), lamp::Symbol::Zero);
  EXPECT_EQ(v.symbol(2), lamp::Symbol::X);
  EXPECT_THROW(tv("10-"), lamp::ParseError);
  EXPECT_THROW(tv(""), lamp::ZeroLength);
}

TEST(TernaryVector, BinaryRoundTrip) {
  auto b = lamp::BitVector::parse("1101001");
  auto t = TernaryVector::from_binary(b);
  EXPECT_TRUE(t.is_binary());
  EXPECT_EQ(t.to_binary(), b);
  EXPECT_FALSE(tv("1x").is_binary());
}

TEST(TernaryVector, IntersectExamples) {
  // (x,0) & (x,x): checked against the point-set oracle below as well.
  auto r = lamp::intersect(tv("x0"), tv("xx"));
  EXPECT_FALSE(r.is_empty());
  EXPECT_EQ(r.to_string(), "x0");
  EXPECT_EQ(oracle::pts("x0"), oracle::meet(oracle::pts("x0"), oracle::pts("xx")));

  auto same = lamp::intersect(tv("1x0x"), tv("1x0x"));
  EXPECT_EQ(*same.as_vector(), tv("1x0x"));

  auto clash = lamp::intersect(tv("0x"), tv("1x"));
  EXPECT_TRUE(clash.is_empty());
  EXPECT_EQ(clash.to_string(), "-x");
  EXPECT_FALSE(clash.as_vector().has_value());

  EXPECT_THROW(lamp::intersect(tv("0x"), tv("1x1")), lamp::LengthMismatch);
}

TEST(TernaryVector, CardX) {
  EXPECT_EQ(lamp::card_x(tv("xx")), 2u);
  EXPECT_EQ(lamp::card_x(tv("0110")), 0u);
  EXPECT_EQ(lamp::card_x(tv("x0x1")), 2u);
}

TEST(TernaryVector, EmptyCoordCount) {
  EXPECT_EQ(lamp::empty_coord_count(tv("0101"), tv("1010")), 4u);
  EXPECT_EQ(lamp::empty_coord_count(tv("x10"), tv("x10")), 0u);
  // (x,1,0) vs (1,0,0): only coordinate 2 clashes; pts(m) and pts(a) are disjoint.
  EXPECT_EQ(lamp::empty_coord_count(tv("x10"), tv("100")), 1u);
  EXPECT_TRUE(oracle::meet(oracle::pts("x10"), oracle::pts("100")).empty());
  EXPECT_THROW(lamp::empty_coord_count(tv("x"), tv("xx")), lamp::LengthMismatch);
}

TEST(TernaryVector, EmptyCountIgnoresPaddingAcrossWords) {
  // 40 coordinates = 80 encoding bits, so the second word is half padding.
  std::string a(40, 'x'), b(40, 'x');
  a[39] = '0';
  b[39] = '1';
  EXPECT_EQ(lamp::empty_coord_count(tv(a), tv(b)), 1u);
  EXPECT_EQ(lamp::card_x(tv(a)), 39u);
}

TEST(TernaryVector, ClassifyExamples) {
  EXPECT_EQ(lamp::classify_interaction(tv("1x0"), tv("1x0")), InteractionClass::Equal);
  EXPECT_EQ(lamp::classify_interaction(tv("x0"), tv("xx")), InteractionClass::QueryInsideAssociator);
  EXPECT_TRUE(oracle::subset(oracle::pts("x0"), oracle::pts("xx")));
  EXPECT_EQ(lamp::classify_interaction(tv("xx"), tv("x0")), InteractionClass::AssociatorInsideQuery);
  EXPECT_EQ(lamp::classify_interaction(tv("x1"), tv("1x")), InteractionClass::Overlap);
  EXPECT_EQ(lamp::classify_interaction(tv("0x"), tv("1x")), InteractionClass::Disjoint);
}

// Exhaustive point-set checks over every pair with n <= 4 (6561 pairs at n = 4).
TEST(TernaryProperty, PointSetOracleExhaustive) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = oracle::all_strings(n, "01x");
    for (const auto& ms : all) {
      const auto pm = oracle::pts(ms);
      const auto m = tv(ms);
      ASSERT_EQ(pm.size(), std::size_t{1} << m.card_x());
      for (const auto& as : all) {
        const auto pa = oracle::pts(as);
        const auto a = tv(as);
        const auto common = oracle::meet(pm, pa);
        const auto r = lamp::intersect(m, a);

        ASSERT_EQ(r.is_empty(), common.empty()) << ms << " & " << as;
        if (!r.is_empty()) {
          ASSERT_EQ(oracle::pts(r.as_vector()->to_string()), common);
        }

        InteractionClass expected;
        if (common.empty())
          expected = InteractionClass::Disjoint;
        else if (pm == pa)
          expected = InteractionClass::Equal;
        else if (oracle::subset(pm, pa))
          expected = InteractionClass::QueryInsideAssociator;
        else if (oracle::subset(pa, pm))
          expected = InteractionClass::AssociatorInsideQuery;
        else
          expected = InteractionClass::Overlap;
        const auto got = lamp::classify_interaction(m, a);
        ASSERT_EQ(got, expected) << ms << " vs " << as;
        ASSERT_EQ(lamp::classify_interaction(a, m), lamp::mirror(got));

        // commutative, idempotent
        ASSERT_EQ(lamp::intersect(a, m).to_string(), r.to_string());
        ASSERT_EQ(lamp::intersect(m, m).to_string(), ms);
      }
    }
  }
}
