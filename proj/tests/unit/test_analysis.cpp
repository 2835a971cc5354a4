#include <fiq/analysis.hpp>
#include <fiq/error.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace fiq {
namespace {

using testing::prop;
using testing::rat;

constexpr double kTol = 1e-12;

Fiq eq3_input(const Rational& q3) { return Fiq({Propensity::zero(), Propensity::zero(), Propensity(q3)}, Tail::fair); }

TEST(BitEntropy, ClosedForms) {
  EXPECT_NEAR(bit_entropy(Propensity::half()), 1.0, kTol);
  EXPECT_EQ(bit_entropy(Propensity::zero()), 0.0);
  EXPECT_EQ(bit_entropy(Propensity::one()), 0.0);
  EXPECT_NEAR(bit_entropy(prop(1, 4)), 2 - 0.75 * std::log2(3.0), kTol);
  EXPECT_NEAR(bit_entropy(prop(1, 4)), 0.811278124459133, kTol);
  EXPECT_NEAR(bit_entropy(prop(3, 4)), bit_entropy(prop(1, 4)), kTol);
}

TEST(InformationContent, Examples) {
  EXPECT_NEAR(information_content(Fiq({Propensity::one(), Propensity::one()}, Tail::zero)), 2.0, kTol);
  EXPECT_NEAR(information_content(eq3_input(rat(1, 2))), 2.0, kTol);
  EXPECT_NEAR(information_content(eq3_input(rat(1, 4))), 2 + (1 - 0.811278124459133), kTol);
  EXPECT_NEAR(information_content(Fiq({}, Tail::fair)), 0.0, kTol);
  EXPECT_NEAR(information_content(WideMarginal({Propensity::one()}, {}, Tail::fair)), 1.0, kTol);
}

TEST(UnitChangeAudit, Eq3Case) {
  const AuditReport r = unit_change_audit(eq3_input(rat(1, 2)), 3);
  EXPECT_EQ(r.marginal_engine, WideMarginal({}, {prop(1, 4), prop(1, 2), prop(1, 2)}, Tail::fair));
  EXPECT_EQ(r.exact_marginals, WideMarginal({}, {prop(1, 3), prop(1, 3), prop(1, 2)}, Tail::fair));
  ASSERT_EQ(r.pair_defects.size(), 3u);
  EXPECT_EQ(r.pair_defects[0].first, 1);
  EXPECT_EQ(r.pair_defects[0].second, 2);
  EXPECT_EQ(r.pair_defects[0].defect, rat(1, 9));
  EXPECT_TRUE(r.dependence_detected);
  EXPECT_TRUE(r.marginals_disagree);
  EXPECT_NEAR(r.joint_entropy_bits, std::log2(6.0), 1e-9);
  EXPECT_NEAR(r.marginal_entropy_sum_bits, 2 * bit_entropy(prop(1, 3)) + 1, 1e-9);
  EXPECT_GE(r.dependence_information_bits(), 0.1);
  EXPECT_EQ(r.model, CarryModel::fair_tail_fixed_point);
}

TEST(UnitChangeAudit, DeterministicInputLosesNothing) {
  for (std::uint64_t factor : {1u, 3u, 5u, 6u, 13u}) {
    const AuditReport r = unit_change_audit(testing::dyadic_fiq(0b001, 3), factor);
    EXPECT_FALSE(r.dependence_detected) << factor;
    EXPECT_FALSE(r.marginals_disagree) << factor;
    EXPECT_NEAR(r.joint_entropy_bits, 0.0, kTol);
    EXPECT_NEAR(r.dependence_information_bits(), 0.0, kTol);
    EXPECT_NEAR(r.information_after_exact, r.information_after_marginal_engine, kTol);
  }
}

TEST(UnitChangeAudit, IdentityFactorRaisesNoFlags) {
  const AuditReport r = unit_change_audit(eq3_input(rat(1, 2)), 1);
  EXPECT_FALSE(r.dependence_detected);
  EXPECT_FALSE(r.marginals_disagree);
  EXPECT_NEAR(r.information_before, r.information_after_exact, kTol);
}

TEST(UnitChangeAudit, UnitLabels) {
  const Fiq q = eq3_input(rat(1, 2)).with_unit("m");
  EXPECT_EQ(unit_change_audit(q, 3).unit_label, "m/3");
  EXPECT_EQ(unit_change_audit(q, 3, "ft").unit_label, "ft");
  EXPECT_FALSE(unit_change_audit(eq3_input(rat(1, 2)), 3).unit_label.has_value());
}

TEST(UnitChangeAudit, Errors) {
  EXPECT_THROW(unit_change_audit(eq3_input(rat(1, 2)), 0), ArgumentError);
  EXPECT_THROW(unit_change_audit(Fiq(std::vector<Propensity>(30, prop(1, 3)), Tail::fair), 3), ResourceError);
}

TEST(Subadditivity, EqualityExactlyForProductLaws) {
  const JointLaw product = joint_add(Fiq({prop(1, 3), prop(1, 2), prop(4, 5)}, Tail::zero), testing::dyadic_fiq(0, 3));
  EXPECT_NEAR(joint_entropy(product), marginal_entropy_sum(product), 1e-9);

  const JointLaw coupled = joint_mul_constant(eq3_input(rat(1, 2)), 3);
  EXPECT_LT(joint_entropy(coupled), marginal_entropy_sum(coupled) - 1e-9);

  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const Fiq q = testing::random_fiq(rng, 5, Tail::fair);
    const JointLaw law = joint_mul_constant(q, 1 + rng() % 12);
    EXPECT_LE(joint_entropy(law), marginal_entropy_sum(law) + 1e-9);
  }
}

TEST(AuditSoundness, DistinctLawsShareMarginals) {
  // The L = 3 law and the product law of its marginals project identically.
  const JointLaw coupled = joint_mul_constant(eq3_input(rat(1, 2)), 3);
  const WideMarginal m = project_to_marginal(coupled);
  const Fiq independent(m.fractional_propensities(), Tail::zero);
  const JointLaw product = joint_add(independent, testing::dyadic_fiq(0, 3));
  EXPECT_FALSE(coupled.scaled_masses() == product.scaled_masses());
  EXPECT_EQ(project_to_marginal(product).fractional_propensities(), m.fractional_propensities());
}

// Enumerates every realization of depth independent bits.
std::vector<Rational> brute_force_histogram(const Fiq& q, unsigned depth, std::uint64_t bins) {
  std::vector<Rational> masses(bins);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << depth); ++v) {
    Rational w = 1;
    for (unsigned k = 1; k <= depth; ++k) {
      const Rational p = q.at(k).value();
      w *= ((v >> (depth - k)) & 1) ? p : Rational(1 - p);
    }
    masses[(v * bins) >> depth] += w;
  }
  return masses;
}

TEST(DigitHistogram, UniformForFairBits) {
  const Histogram h = digit_histogram(Fiq({}, Tail::fair), 16, 256);
  ASSERT_EQ(h.masses.size(), 256u);
  for (const auto& m : h.masses) EXPECT_EQ(m, rat(1, 256));
  EXPECT_EQ(h.truncation_bound(), rat(1, 512));
}

TEST(DigitHistogram, PointMassForCertainBits) {
  const Histogram h = digit_histogram(Fiq(std::vector<Propensity>(16, Propensity::one()), Tail::zero), 16, 256);
  for (std::size_t i = 0; i + 1 < h.masses.size(); ++i) EXPECT_EQ(h.masses[i], 0);
  EXPECT_EQ(h.masses.back(), 1);
}

TEST(DigitHistogram, QuarterBitsMatchEnumeration) {
  const Fiq q(std::vector<Propensity>(16, prop(1, 4)), Tail::zero);
  const Histogram h = digit_histogram(q, 16, 4);
  const std::vector<Rational> expected{rat(9, 16), rat(3, 16), rat(3, 16), rat(1, 16)};
  EXPECT_EQ(h.masses, expected);
  EXPECT_EQ(brute_force_histogram(q, 16, 4), expected);
}

TEST(DigitHistogram, MatchesEnumerationForRandomVectors) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 5; ++i) {
    const Fiq q = testing::random_fiq(rng, 10, i % 2 ? Tail::fair : Tail::zero);
    for (std::uint64_t bins : {2u, 8u, 64u}) {
      EXPECT_EQ(digit_histogram(q, 12, bins).masses, brute_force_histogram(q, 12, bins));
    }
  }
}

TEST(DigitHistogram, RefinementSplitsEachBin) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 3; ++i) {
    const Fiq q = testing::random_fiq(rng, 8, Tail::fair);
    for (std::uint64_t bins : {4u, 8u, 16u}) {
      const auto coarse = digit_histogram(q, 16, bins).masses;
      const auto fine = digit_histogram(q, 16, bins * 2).masses;
      for (std::size_t b = 0; b < coarse.size(); ++b) EXPECT_EQ(coarse[b], fine[2 * b] + fine[2 * b + 1]);
    }
  }
}

TEST(DigitHistogram, Errors) {
  const Fiq q({}, Tail::fair);
  EXPECT_THROW(digit_histogram(q, 2, 8), ArgumentError);
  EXPECT_THROW(digit_histogram(q, 4, 6), ArgumentError);
  EXPECT_THROW(digit_histogram(q, 4, 0), ArgumentError);
  EXPECT_THROW(digit_histogram(q, 0, 1), ArgumentError);
  EXPECT_NO_THROW(digit_histogram(q, 3, 8));
}

}  // namespace
}  // namespace fiq
