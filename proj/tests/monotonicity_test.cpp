#include "bumpfn/monotonicity.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bumpfn/derivatives.hpp"
#include "bumpfn/errors.hpp"

namespace bumpfn {
namespace {

const IntervalSpec kPositive = IntervalSpec::positive_half_line();
const IntervalSpec kNegative = IntervalSpec::negative_half_line();

// Re-evaluates a witness through eval_derivative and returns the sign of the
// quantity the check requires to be >= 0.
int witness_sign(MonotonicityKind kind, FunctionId fn, const Witness& w) {
  const auto r = eval_derivative(fn, w.order, w.t);
  const int required = (kind == MonotonicityKind::CM && w.order % 2 == 1) ? -1 : 1;
  return required * r.log_form->sign;
}

TEST(IntervalSpec, ParsesGrammar) {
  const auto a = IntervalSpec::parse("0:inf");
  EXPECT_EQ(a.lower, 0.0);
  EXPECT_TRUE(std::isinf(a.upper));
  const auto b = IntervalSpec::parse("-inf:0");
  EXPECT_TRUE(std::isinf(b.lower) && b.lower < 0);
  const auto c = IntervalSpec::parse("-2.5:1e3");
  EXPECT_EQ(c.lower, -2.5);
  EXPECT_EQ(c.upper, 1000.0);
  EXPECT_EQ(c.to_string(), "-2.5:1000");
  for (const char* bad : {"", "1", "1:2:3", "2:1", "a:b", "0:", "0:nan"}) {
    EXPECT_THROW(IntervalSpec::parse(bad), ParseError) << bad;
  }
}

TEST(SampleGrid, TruncatedLogSpacingIsDeterministic) {
  const auto grid = sample_grid(kPositive, 200);
  ASSERT_EQ(grid.size(), 200u);
  EXPECT_EQ(grid.front(), 1e-3);
  EXPECT_EQ(grid.back(), 1e3);
  for (std::size_t n = 1; n < grid.size(); ++n) EXPECT_GT(grid[n], grid[n - 1]);
  EXPECT_EQ(grid, sample_grid(kPositive, 200));

  const auto negative = sample_grid(kNegative, 200);
  for (std::size_t n = 0; n < grid.size(); ++n) EXPECT_EQ(negative[n], -grid[grid.size() - 1 - n]);

  const auto bounded = sample_grid(IntervalSpec::parse("2:5"), 7);
  EXPECT_GT(bounded.front(), 2.0);
  EXPECT_LT(bounded.back(), 5.0);
}

TEST(CheckCm, HIsProvedOnPositiveHalfLine) {
  const auto report = check_cm(FunctionId::H, kPositive, 20, 200);
  EXPECT_EQ(report.verdict, Verdict::proved_exact);
  EXPECT_TRUE(report.witnesses.empty());
  EXPECT_EQ(report.tolerance_forgiven, 0);
  EXPECT_EQ(report.sampled_checks, 21 * 200);
}

TEST(CheckCm, OrderZeroIsTriviallyNonnegative) {
  EXPECT_EQ(check_cm(FunctionId::H, kNegative, 0, 50).verdict, Verdict::verified_sampled);
}

TEST(CheckCm, GFailsOnPositiveHalfLine) {
  const auto report = check_cm(FunctionId::G, kPositive, 3, 50);
  EXPECT_EQ(report.verdict, Verdict::violated);
  // -g' < 0 everywhere; g'' changes sign at t = 1/2.
  bool order_one = false;
  bool order_two = false;
  for (const auto& w : report.witnesses) {
    EXPECT_LT(witness_sign(MonotonicityKind::CM, FunctionId::G, w), 0);
    order_one = order_one || w.order == 1;
    if (w.order == 2) {
      order_two = true;
      EXPECT_GT(w.t, 0.5);
      EXPECT_LT(w.t, 1.0);
    }
  }
  EXPECT_TRUE(order_one);
  EXPECT_TRUE(order_two);
}

TEST(CheckCm, RejectsIntervalsThroughZero) {
  EXPECT_THROW(check_cm(FunctionId::H, IntervalSpec::parse("-1:1"), 3, 10), DomainError);
  EXPECT_NO_THROW(check_cm(FunctionId::F, IntervalSpec::parse("-1:1"), 3, 10));
}

TEST(CheckAm, GIsProvedOnNegativeHalfLine) {
  const auto report = check_am(FunctionId::G, kNegative, 20, 200);
  EXPECT_EQ(report.verdict, Verdict::proved_exact);
  EXPECT_EQ(report.tolerance_forgiven, 0);
  EXPECT_EQ(check_am(FunctionId::G, kNegative, 0, 1).verdict, Verdict::proved_exact);
}

TEST(CheckAm, HFailsOnNegativeHalfLine) {
  const auto report = check_am(FunctionId::H, kNegative, 2, 50);
  EXPECT_EQ(report.verdict, Verdict::violated);
  ASSERT_FALSE(report.witnesses.empty());
  EXPECT_EQ(report.witnesses.front().order, 1);
  for (const auto& w : report.witnesses) {
    EXPECT_LT(witness_sign(MonotonicityKind::AM, FunctionId::H, w), 0);
  }
}

TEST(CheckAm, FIsExactOnNonPositiveAxis) {
  EXPECT_EQ(check_am(FunctionId::F, kNegative, 10, 20).verdict, Verdict::proved_exact);
  EXPECT_EQ(check_cm(FunctionId::F, kNegative, 10, 20).verdict, Verdict::proved_exact);
}

TEST(LogDerivative, Examples) {
  EXPECT_EQ(log_derivative_one_over_t(1, 1.0, 1), -1.0);
  EXPECT_EQ(log_derivative_one_over_t(2, 1.0, 1), 2.0);
  EXPECT_EQ(log_derivative_one_over_t(3, 2.0, -1), 0.375);
  EXPECT_THROW(log_derivative_one_over_t(1, 0.0, 1), DomainError);
}

TEST(CheckLcm, PositiveHalfLinePairsAreProved) {
  EXPECT_EQ(check_lcm(FunctionId::H, kPositive, 30).verdict, Verdict::proved_exact);
  EXPECT_EQ(check_lcm(Subject{FunctionId::G, true}, kPositive, 30).verdict, Verdict::proved_exact);
}

// ln g = -1/t, so (-1)[ln g]' = -1/t^2 < 0 for every t: g is increasing on
// (-inf, 0) and cannot be LCM there. Same for 1/h.
TEST(CheckLcm, GAndReciprocalHFailOnNegativeHalfLine) {
  for (Subject s : {Subject{FunctionId::G}, Subject{FunctionId::H, true}}) {
    const auto report = check_lcm(s, kNegative, 30);
    EXPECT_EQ(report.verdict, Verdict::violated) << s.name();
    ASSERT_FALSE(report.witnesses.empty());
    EXPECT_EQ(report.witnesses.front().order, 1);
    EXPECT_LT(report.witnesses.front().value, 0.0);
  }
}

TEST(CheckLcm, HOnNegativeHalfLineFailsAtSecondOrder) {
  const auto report = check_lcm(FunctionId::H, kNegative, 2);
  EXPECT_EQ(report.verdict, Verdict::violated);
  ASSERT_EQ(report.witnesses.size(), 1u);
  EXPECT_EQ(report.witnesses[0].order, 2);
  EXPECT_EQ(check_lcm(FunctionId::H, kNegative, 1).verdict, Verdict::verified_sampled);
}

TEST(CheckLcm, FRequiresPositiveInterval) {
  EXPECT_THROW(check_lcm(FunctionId::F, IntervalSpec::parse("-1:1"), 3), DomainError);
  EXPECT_EQ(check_lcm(Subject{FunctionId::F, true}, kPositive, 10).verdict, Verdict::proved_exact);
}

TEST(CheckLcm, ImpliesCm) {
  const std::pair<Subject, IntervalSpec> cases[] = {
      {Subject{FunctionId::H}, kPositive}, {Subject{FunctionId::G}, kNegative},
      {Subject{FunctionId::H, true}, kNegative}};
  for (const auto& [subject, interval] : cases) {
    if (check_lcm(subject, interval, 15).verdict != Verdict::proved_exact) continue;
    if (subject.reciprocal) continue;  // 1/g = h and 1/h = g
    EXPECT_NE(check_cm(subject.function, interval, 15, 100).verdict, Verdict::violated);
  }
}

TEST(Reflection, CmAmEquivalence) {
  EXPECT_TRUE(cm_am_reflection_equivalence(0, 5));
  EXPECT_TRUE(cm_am_reflection_equivalence(20, 100));
}

TEST(Reflection, OrderOneAtOne) {
  const double lhs = -eval_derivative(FunctionId::H, 1, 1.0).value;
  const double rhs = eval_derivative(FunctionId::G, 1, -1.0).value;
  EXPECT_DOUBLE_EQ(lhs, std::numbers::e);
  EXPECT_DOUBLE_EQ(rhs, std::numbers::e);
}

TEST(ReportJson, Schema) {
  const auto json = report_to_json(check_cm(FunctionId::G, kPositive, 2, 10));
  EXPECT_EQ(json["kind"], "cm");
  EXPECT_EQ(json["function"], "g");
  EXPECT_EQ(json["interval"], "0:inf");
  EXPECT_EQ(json["max_order"], 2);
  EXPECT_EQ(json["verdict"], "violated");
  EXPECT_EQ(json["samples_per_order"], 10);
  ASSERT_TRUE(json["witnesses"].is_array());
  for (const auto& w : json["witnesses"]) {
    EXPECT_TRUE(w.contains("order") && w.contains("t") && w.contains("value"));
  }
  EXPECT_EQ(report_to_json(check_lcm(Subject{FunctionId::G, true}, kPositive, 3))["function"], "1/g");
}

}  // namespace
}  // namespace bumpfn
