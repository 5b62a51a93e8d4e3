#include <gtest/gtest.h>

#include <vector>

#include "logint/step_function.hpp"

using logint::Complex;
using logint::Error;
using logint::ErrorCode;
using logint::Piece;
using logint::SingularStep;
using logint::Step;
using logint::StepFunction;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected logint::Error";
  return ErrorCode::malformed_input;
}

}  // namespace

TEST(StepFunction, CanonicalFormSortsMergesAndDropsZeros) {
  const auto f = StepFunction::from_pieces({{1.0, 2.0, 2.0}, {0.0, 1.0, 2.0}, {2.0, 3.0, 0.0}, {3.0, 4.0, 5.0}}, 4.0);
  const std::vector<Piece> expected{{0.0, 2.0, 2.0}, {3.0, 4.0, 5.0}};
  EXPECT_EQ(f.pieces(), expected);
  EXPECT_DOUBLE_EQ(f.support_measure(), 3.0);
  EXPECT_DOUBLE_EQ(f.sup_abs(), 5.0);
}

TEST(StepFunction, NonTouchingEqualPiecesStaySeparate) {
  const auto f = StepFunction::from_pieces({{0.0, 1.0, 1.0}, {2.0, 3.0, 1.0}});
  EXPECT_EQ(f.pieces().size(), 2u);
}

TEST(StepFunction, EqualityIsAlmostEverywhereEquality) {
  const auto a = StepFunction::from_pieces({{0.0, 0.5, 3.0}, {0.5, 1.0, 3.0}}, 1.0);
  const auto b = StepFunction::constant(3.0, 0.0, 1.0, 1.0);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == StepFunction::constant(3.0, 0.0, 1.0, 2.0));
}

TEST(StepFunction, RejectsMalformedPieces) {
  EXPECT_EQ(code_of([] { StepFunction::from_pieces({{0.0, 1.0, 1.0}, {0.5, 2.0, 1.0}}); }), ErrorCode::malformed_input);
  EXPECT_EQ(code_of([] { StepFunction::from_pieces({{1.0, 1.0, 1.0}}); }), ErrorCode::malformed_input);
  EXPECT_EQ(code_of([] { StepFunction::from_pieces({{-1.0, 1.0, 1.0}}); }), ErrorCode::malformed_input);
  EXPECT_EQ(code_of([] { StepFunction::from_pieces({{0.0, 2.0, 1.0}}, 1.0); }), ErrorCode::malformed_input);
  EXPECT_EQ(code_of([] { StepFunction(0.0); }), ErrorCode::malformed_input);
  EXPECT_EQ(code_of([] { StepFunction::constant(Complex{std::nan(""), 0.0}, 0.0, 1.0); }), ErrorCode::not_finite);
}

TEST(StepFunction, Evaluation) {
  const auto f = StepFunction::from_pieces({{0.0, 1.0, 1.0}, {2.0, 3.0, Complex{0.0, 2.0}}});
  EXPECT_EQ(f(0.0), Complex(1.0));
  EXPECT_EQ(f(1.0), Complex{});
  EXPECT_EQ(f(2.5), Complex(0.0, 2.0));
  EXPECT_EQ(f(3.0), Complex{});
}

TEST(Pointwise, AdditiveIdentity) {
  const auto f = StepFunction::from_pieces({{0.0, 0.3, 2.0}, {0.6, 1.0, -1.0}}, 1.0);
  EXPECT_EQ(f + StepFunction(1.0), f);
}

TEST(Pointwise, ProductOnRefinement) {
  const auto one = StepFunction::constant(1.0, 0.0, 1.0, 1.0);
  const auto three = StepFunction::constant(3.0, 0.0, 0.5, 1.0);
  EXPECT_EQ(one * three, three);
}

TEST(Pointwise, RefinementSubtraction) {
  const auto a = StepFunction::constant(2.0, 0.0, 1.0, 1.0);
  const auto b = StepFunction::constant(2.0, 0.5, 1.0, 1.0);
  EXPECT_EQ(a - b, StepFunction::constant(2.0, 0.0, 0.5, 1.0));
}

TEST(Pointwise, DomainMismatch) {
  const auto a = StepFunction::constant(1.0, 0.0, 1.0, 1.0);
  const auto b = StepFunction::constant(1.0, 0.0, 1.0, 2.0);
  EXPECT_EQ(code_of([&] { (void)(a + b); }), ErrorCode::domain_mismatch);
}

TEST(Pointwise, SelfSubtractionIsZero) {
  const auto f = StepFunction::from_pieces({{0.0, 0.25, Complex{1.0, -2.0}}, {0.5, 0.75, 7.0}}, 1.0);
  EXPECT_TRUE((f - f).is_zero());
}

TEST(StepFunction, RestrictionAndScaling) {
  const auto f = StepFunction::constant(2.0, 0.0, 1.0, 1.0);
  EXPECT_EQ(f.restricted(0.25, 0.5), StepFunction::constant(2.0, 0.25, 0.5, 1.0));
  EXPECT_TRUE(f.scaled(0.0).is_zero());
  EXPECT_EQ(f.scaled(Complex{0.0, 1.0}), StepFunction::constant(Complex(0.0, 2.0), 0.0, 1.0, 1.0));
}

TEST(SingularStep, SortsAndMerges) {
  const SingularStep s({{0.5, 1.0}, {0.25, 3.0}, {0.25, 1.0}});
  const std::vector<Step> expected{{0.25, 3.0}, {0.75, 1.0}};
  EXPECT_EQ(s.steps(), expected);
  EXPECT_DOUBLE_EQ(s(0.25), 3.0);
  EXPECT_DOUBLE_EQ(s(0.5), 1.0);
  EXPECT_DOUBLE_EQ(s(2.0), 0.0);
}

TEST(SingularStep, PositivePartDropsZeroHeights) {
  const SingularStep s({{0.5, 2.0}, {0.5, 0.0}});
  EXPECT_EQ(s.positive_part(), SingularStep({{0.5, 2.0}}));
  EXPECT_EQ(code_of([] { SingularStep({{0.0, 1.0}}); }), ErrorCode::malformed_input);
  EXPECT_EQ(code_of([] { SingularStep({{1.0, -1.0}}); }), ErrorCode::malformed_input);
}
