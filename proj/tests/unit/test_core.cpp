#include <fiq/error.hpp>
#include <fiq/joint_law.hpp>
#include <fiq/number.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace fiq {
namespace {

using testing::prop;
using testing::rat;

TEST(Propensity, MakeReducesAndValidates) {
  EXPECT_EQ(make_propensity(1, 2).value(), rat(1, 2));
  EXPECT_EQ(make_propensity(2, 4).to_string(), "1/2");
  EXPECT_EQ(make_propensity(0, 7).to_string(), "0");
  EXPECT_EQ(make_propensity(5, 5).to_string(), "1");
  EXPECT_THROW(make_propensity(3, 2), RangeError);
  EXPECT_THROW(make_propensity(-1, 2), RangeError);
  EXPECT_THROW(make_propensity(1, 0), ArgumentError);
  // A negative denominator is fine as long as the quotient is in range.
  EXPECT_EQ(make_propensity(-1, -4).value(), rat(1, 4));
}

TEST(Propensity, ComplementAndPredicates) {
  const Propensity p = prop(1, 3);
  EXPECT_EQ(p.complement().value(), rat(2, 3));
  EXPECT_FALSE(p.is_deterministic());
  EXPECT_TRUE(Propensity::zero().is_deterministic());
  EXPECT_TRUE(Propensity::one().is_one());
  EXPECT_LT(prop(1, 3), prop(1, 2));
}

TEST(Fiq, ValidateKeepsEntriesAsGiven) {
  const std::vector<Rational> raw{0, 0, rat(1, 2)};
  const Fiq q = fiq_validate(raw, Tail::fair);
  EXPECT_EQ(q.depth(), 3u);
  EXPECT_EQ(q.at(3).value(), rat(1, 2));
  EXPECT_EQ(q.at(4).value(), rat(1, 2));

  // Trailing explicit 1/2 entries are not canonicalized away.
  const std::vector<Rational> trailing{rat(1, 3), rat(1, 2), rat(1, 2)};
  EXPECT_EQ(fiq_validate(trailing, Tail::fair).depth(), 3u);
}

TEST(Fiq, EmptyFairIsTotallyUnknown) {
  const Fiq q = fiq_validate({}, Tail::fair);
  EXPECT_EQ(q.depth(), 0u);
  for (std::size_t k = 1; k < 10; ++k) EXPECT_EQ(q.at(k), Propensity::half());
}

TEST(Fiq, ValidateRejectsOutOfRange) {
  const std::vector<Rational> raw{rat(3, 2)};
  EXPECT_THROW(fiq_validate(raw, Tail::fair), RangeError);
  const std::vector<Rational> negative{rat(1, 2), rat(-1, 3)};
  try {
    fiq_validate(negative, Tail::zero);
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos);
  }
}

TEST(Fiq, ZeroTailAndPositionZero) {
  const Fiq q({prop(1, 1)}, Tail::zero);
  EXPECT_TRUE(q.at(2).is_zero());
  EXPECT_THROW(q.at(0), ArgumentError);
}

TEST(WideMarginal, PositionsAndTail) {
  const WideMarginal m({prop(1, 3), prop(1, 1)}, {prop(1, 4)}, Tail::fair);
  EXPECT_EQ(m.at(0).value(), rat(1, 3));
  EXPECT_EQ(m.at(-1).value(), rat(1, 1));
  EXPECT_TRUE(m.at(-2).is_zero());
  EXPECT_EQ(m.at(1).value(), rat(1, 4));
  EXPECT_EQ(m.at(2), Propensity::half());

  const WideMarginal from_fiq = Fiq({prop(1, 5)}, Tail::zero);
  EXPECT_EQ(from_fiq.integer_bits(), 0u);
  EXPECT_TRUE(from_fiq.at(0).is_zero());
  EXPECT_TRUE(from_fiq.at(2).is_zero());
}

TEST(WideMarginal, EquivalenceIgnoresExplicitTailCopies) {
  const WideMarginal a({}, {prop(1, 4)}, Tail::fair);
  const WideMarginal b({}, {prop(1, 4), prop(1, 2)}, Tail::fair);
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(equivalent(a, b));
  EXPECT_FALSE(equivalent(a, WideMarginal({}, {prop(1, 4)}, Tail::zero)));
  EXPECT_TRUE(equivalent(WideMarginal({prop(0, 1)}, {}, Tail::zero), WideMarginal({}, {prop(0, 1)}, Tail::zero)));
}

TEST(BitPattern, ScaledRoundTripAndPositions) {
  const Window w{2, 3};
  const BitPattern p = BitPattern::from_scaled(mpz_class(0b10011), w);
  EXPECT_EQ(p.to_string(), "10.011");
  EXPECT_EQ(p.at(-1), 1);
  EXPECT_EQ(p.at(0), 0);
  EXPECT_EQ(p.at(1), 0);
  EXPECT_EQ(p.at(3), 1);
  EXPECT_EQ(p.scaled_value(), 0b10011);
  EXPECT_THROW(p.at(4), ArgumentError);
  EXPECT_THROW(p.at(-2), ArgumentError);
  EXPECT_THROW(BitPattern::from_scaled(mpz_class(0b100000), w), ArgumentError);

  EXPECT_EQ(BitPattern::from_scaled(mpz_class(3), Window{0, 3}).to_string(), "0.011");
  EXPECT_EQ(BitPattern::from_scaled(mpz_class(0), Window{0, 0}).to_string(), "0.");
}

TEST(JointLaw, EnforcesInvariants) {
  const Window w{0, 1};
  const auto zero = BitPattern::from_scaled(mpz_class(0), w);
  const auto one = BitPattern::from_scaled(mpz_class(1), w);
  EXPECT_NO_THROW(JointLaw(w, {{zero, prop(1, 3)}, {one, prop(2, 3)}}, TailNote::zero));
  EXPECT_THROW(JointLaw(w, {{zero, prop(1, 3)}, {one, prop(1, 3)}}, TailNote::zero), ArgumentError);
  EXPECT_THROW(JointLaw(w, {{zero, prop(1, 2)}, {zero, prop(1, 2)}}, TailNote::zero), ArgumentError);
  EXPECT_THROW(JointLaw(w, {{zero, prop(0, 1)}, {one, prop(1, 1)}}, TailNote::zero), ArgumentError);
  EXPECT_THROW(JointLaw(Window{1, 1}, {{zero, prop(1, 1)}}, TailNote::zero), ArgumentError);
}

TEST(JointLaw, FromScaledSizesIntegerWindow) {
  std::map<mpz_class, Rational> masses{{mpz_class(1), rat(1, 2)}, {mpz_class(2), rat(1, 2)}};
  const JointLaw law = JointLaw::from_scaled(1, masses, TailNote::zero);
  EXPECT_EQ(law.window().integer_bits, 1u);
  ASSERT_EQ(law.support().size(), 2u);
  EXPECT_EQ(law.support()[0].first.to_string(), "0.1");
  EXPECT_EQ(law.support()[1].first.to_string(), "1.0");
}

TEST(JointLaw, TotalVariationMatchesByValue) {
  std::map<mpz_class, Rational> a{{mpz_class(1), rat(1, 2)}, {mpz_class(2), rat(1, 2)}};
  std::map<mpz_class, Rational> b{{mpz_class(1), rat(1, 1)}};
  const JointLaw la = JointLaw::from_scaled(1, a, TailNote::zero);
  const JointLaw lb = JointLaw::from_scaled(1, b, TailNote::zero);
  EXPECT_EQ(total_variation(la, lb), rat(1, 2));
  EXPECT_EQ(total_variation(la, la), 0);
  EXPECT_THROW(total_variation(la, JointLaw::from_scaled(2, b, TailNote::zero)), ArgumentError);
}

}  // namespace
}  // namespace fiq
