#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "logint/fnorm.hpp"
#include "logint/witnesses.hpp"

using namespace logint;
using namespace logint::witness;

TEST(Unboundedness, ReferenceCase) {
  const auto w = unboundedness_witness(1.0, 2);
  EXPECT_EQ(w.K, 2.0);
  // Window (1/(2 log 2), 1/log 3), midpoint.
  EXPECT_NEAR(w.eta, 0.5 * (1.0 / (2.0 * std::log(2.0)) + 1.0 / std::log(3.0)), 1e-15);
  EXPECT_TRUE(w.holds());
  // eta = 0.8 from the worked example is admissible too.
  EXPECT_LT(0.8 * std::log(3.0), 1.0);
  EXPECT_GE(0.8 * std::log(2.0), 0.5);
}

TEST(Unboundedness, InvariantsReverifiedIndependently) {
  for (double eps : {0.01, 0.1, 1.0, 5.0})
    for (int N : {1, 2, 3, 10, 100}) {
      const auto w = unboundedness_witness(eps, N);
      EXPECT_TRUE(w.holds()) << eps << " " << N;
      EXPECT_DOUBLE_EQ(lognorm(w.f), w.norm_f);
      EXPECT_DOUBLE_EQ(lognorm(w.f.scaled(1.0 / N)), w.norm_f_over_N);
      EXPECT_LT(lognorm(w.f), eps);
      EXPECT_GE(lognorm(w.f.scaled(1.0 / N)), eps / 2.0);
      EXPECT_LE(w.eta, 1.0);
    }
}

TEST(Unboundedness, DegenerateNEqualsOne) {
  const auto w = unboundedness_witness(1.0, 1);
  EXPECT_GE(w.norm_f, 0.5);
  EXPECT_LT(w.norm_f, 1.0);
}

TEST(Unboundedness, InvalidParameters) {
  EXPECT_THROW(unboundedness_witness(0.0, 2), Error);
  EXPECT_THROW(unboundedness_witness(1.0, 0), Error);
}

TEST(ConvexSplit, ZeroFunction) {
  const auto s = convex_split(StepFunction(1.0), 0.1);
  EXPECT_EQ(s.n, 1);
  EXPECT_TRUE(s.average().is_zero());
}

TEST(ConvexSplit, ConstantOneCoarse) {
  const auto s = convex_split(StepFunction::constant(1.0, 0.0, 1.0, 1.0), 1.0);
  EXPECT_EQ(s.n, 1);
  ASSERT_EQ(s.pieces.size(), 1u);
  EXPECT_NEAR(s.piece_norm, std::numbers::ln2, 1e-15);
}

TEST(ConvexSplit, ConstantOneFine) {
  const auto f = StepFunction::constant(1.0, 0.0, 1.0, 1.0);
  const auto s = convex_split(f, 0.1);
  EXPECT_EQ(s.n, 37);
  EXPECT_NEAR(s.piece_norm, std::log(38.0) / 37.0, 1e-15);
  EXPECT_GE(std::log(37.0) / 36.0, 0.1);
  ASSERT_EQ(s.breakpoints.size(), 38u);
  for (int j = 0; j <= 37; ++j) EXPECT_NEAR(s.breakpoints[static_cast<std::size_t>(j)], j / 37.0, 1e-15);
  for (const auto& p : s.pieces) EXPECT_LT(lognorm(p), 0.1);
  EXPECT_LT(sup_distance(s.average(), f), 1e-15);
}

TEST(ConvexSplit, InvariantsOnMixedFunction) {
  const auto f = StepFunction::from_pieces({{0.0, 0.2, 50.0}, {0.3, 0.7, Complex{0.0, -2.0}}, {0.9, 1.0, 1e-3}}, 1.0);
  const double eps = 0.05;
  const auto s = convex_split(f, eps);
  const double total = lognorm(f.scaled(static_cast<double>(s.n)));
  double sum = 0.0;
  for (const auto& p : s.pieces) {
    EXPECT_NEAR(lognorm(p), total / s.n, 1e-12);
    EXPECT_LT(lognorm(p), eps);
    sum += lognorm(p);
  }
  EXPECT_NEAR(sum, total, 1e-12);
  EXPECT_GE(lognorm(f.scaled(s.n - 1.0)) / (s.n - 1.0), eps);
  EXPECT_LT(sup_distance(s.average(), f), 1e-12);
  for (std::size_t j = 1; j < s.breakpoints.size(); ++j) EXPECT_LE(s.breakpoints[j - 1], s.breakpoints[j]);
}

TEST(ConvexSplit, RequiresUnitInterval) {
  EXPECT_THROW(convex_split(StepFunction::constant(1.0, 0.0, 1.0, 2.0), 0.1), Error);
  EXPECT_THROW(convex_split(StepFunction::constant(1.0, 0.0, 1.0, 1.0), 0.0), Error);
}

TEST(Separation, Examples) {
  const auto s1 = separation_sequence(1);
  EXPECT_DOUBLE_EQ(s1.support_measure, 1.0);
  EXPECT_NEAR(s1.lognorm_value, std::log1p(std::numbers::e), 1e-15);
  const auto s3 = separation_sequence(3);
  EXPECT_NEAR(s3.support_measure, 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(s3.lognorm_value, 3.0 + std::log1p(std::exp(-9.0)) / 3.0, 1e-15);
  EXPECT_EQ(s3.dominant, 3.0);
  EXPECT_THROW(separation_sequence(0), Error);
}

TEST(Separation, MatchesStepFunctionWhereRepresentable) {
  for (int k = 1; k <= 26; ++k) {
    const auto f = separation_function(k);
    EXPECT_NEAR(lognorm(f), separation_sequence(k).lognorm_value, 1e-12 * k) << k;
  }
  EXPECT_THROW(separation_function(30), Error);
}

TEST(Separation, MeasureToZeroNormToInfinity) {
  for (int k = 1; k < 20; ++k) {
    const auto a = separation_sequence(k);
    const auto b = separation_sequence(k + 1);
    EXPECT_GT(a.support_measure, b.support_measure);
    EXPECT_LT(a.lognorm_value, b.lognorm_value);
    // Once the peak clears delta, the level set shrinks with k.
    for (double delta : {1e-3, 1.0, 1e3})
      if (a.dominant >= delta) EXPECT_GE(a.measure_at_least(delta), b.measure_at_least(delta));
  }
  EXPECT_GT(separation_sequence(20).lognorm_value, 19.9);
}

TEST(Cauchy, TruncationsRecoverLimitExactly) {
  const auto f = StepFunction::from_pieces({{0.0, 0.25, 0.5}, {0.25, 0.5, 3.0}, {0.5, 0.75, 40.0}, {0.75, 1.0, -900.0}}, 1.0);
  std::vector<StepFunction> seq;
  for (int k = 0; k <= 24; ++k) seq.push_back(truncate(f, std::ldexp(1.0, k)));
  const auto rep = cauchy_limit(seq, 1e-9);
  ASSERT_TRUE(rep.cauchy);
  EXPECT_EQ(*rep.limit, f);
  EXPECT_EQ(rep.distance_to_limit, 0.0);
}

TEST(Cauchy, AlternatingSequenceRejected) {
  const auto one = StepFunction::constant(1.0, 0.0, 1.0, 1.0);
  std::vector<StepFunction> seq;
  for (int k = 0; k < 10; ++k) seq.push_back(k % 2 ? one : StepFunction(1.0));
  const auto rep = cauchy_limit(seq, 1e-6);
  EXPECT_FALSE(rep.cauchy);
  EXPECT_FALSE(rep.limit.has_value());
  EXPECT_NEAR(rep.gap, std::numbers::ln2, 1e-15);
}

TEST(Cauchy, GeometricSequenceExtrapolates) {
  std::vector<StepFunction> seq;
  for (int k = 1; k <= 50; ++k) seq.push_back(StepFunction::constant(1.0 - std::ldexp(1.0, -k), 0.0, 1.0, 1.0));
  const auto rep = cauchy_limit(seq, 1e-6);
  ASSERT_TRUE(rep.cauchy);
  EXPECT_LT(sup_distance(*rep.limit, StepFunction::constant(1.0, 0.0, 1.0, 1.0)), 1e-14);
  for (std::size_t i = 0; i < 10; ++i)
    EXPECT_NEAR(rep.distances[i], std::log1p(std::ldexp(1.0, -static_cast<int>(i) - 2)), 1e-15);
}

TEST(Cauchy, DomainMismatch) {
  std::vector<StepFunction> seq{StepFunction(1.0), StepFunction(2.0)};
  EXPECT_THROW(cauchy_limit(seq, 1e-6), Error);
}
