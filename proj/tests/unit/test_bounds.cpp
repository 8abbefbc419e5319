#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "locmst/bounds.hpp"
#include "locmst/error.hpp"

using namespace locmst;

namespace {

BoundsInput input(double alpha, double eps1 = 1.0, double eps2 = 1.0) {
  BoundsInput in;
  in.alpha = alpha;
  in.eps1 = eps1;
  in.eps2 = eps2;
  return in;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Moment, ClosedFormsForIntegerOrders) {
  for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) {
    EXPECT_LT(rel(geometric_moment(1.0, p), 1.0 / p), 1e-12) << p;
    EXPECT_LT(rel(geometric_moment(2.0, p), (2.0 - p) / (p * p)), 1e-12) << p;
    EXPECT_LT(rel(geometric_moment(3.0, p), (p * p - 6.0 * p + 6.0) / (p * p * p)), 1e-12) << p;
  }
  // Fractional order against a plain 10^6-term sum.
  double direct = 0.0;
  for (int k = 1; k <= 1000000; ++k) direct += std::pow(k, 1.5) * std::pow(0.7, k - 1) * 0.3;
  EXPECT_LT(rel(geometric_moment(1.5, 0.3), direct), 1e-12);
}

TEST(Moment, InvalidProbability) {
  for (double p : {0.0, -0.1, 1.0, 1.5, std::nan("")}) {
    try {
      geometric_moment(1.0, p);
      FAIL() << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidP);
    }
  }
}

TEST(Moment, UpperBoundDominates) {
  for (int r = 1; r <= 4; ++r) {
    for (double theta : {0.1, 1.0, 3.0}) {
      const double p = 1.0 - std::exp(-theta);
      EXPECT_GE(moment_upper_bound(r, theta), geometric_moment(r, p) * (1.0 - 1e-12));
    }
  }
}

TEST(Objectives, PointValues) {
  // Hand evaluation at A = 1, alpha = 1, eps = c = 1.
  const BoundsInput in = input(1.0);
  const double c1 = 0.5 * (1.0 - std::exp(-1.0)) * std::exp(-8.0);
  EXPECT_LT(rel(c1_of_A(1.0, in), c1), 1e-14);
  const double p = 1.0 - std::exp(-1.0);
  EXPECT_LT(rel(c2_of_A(1.0, in), 2.0 * (1.0 + 1.0 / p)), 1e-12);
  EXPECT_LT(rel(c1_of_A(1.0, in), 1.0602641190791614e-4), 1e-12);
  EXPECT_LT(rel(c2_of_A(1.0, in), 5.1639534137386528), 1e-12);
}

TEST(BetaLow, ClosedFormAtAlphaTwo) {
  // alpha = 2: objective 0.5 (1 - u) u^8 with u = e^{-A^2}, maximised at u = 8/9.
  const double expect = 0.5 * (1.0 / 9.0) * std::pow(8.0 / 9.0, 8);
  const Extremum lo = beta_low(input(2.0));
  EXPECT_LT(rel(lo.value, expect), 1e-9);
  EXPECT_NEAR(lo.a_star, std::sqrt(std::log(9.0 / 8.0)), 1e-5);
}

TEST(BetaLow, ReferenceValues) {
  EXPECT_LT(rel(beta_low(input(1.0)).value, 0.0735633), 1e-6);
  EXPECT_LT(rel(beta_low(input(2.0)).value, 0.0216525), 1e-5);
  BoundsInput in = input(1.0, 0.5, 7.0 / 6.0);
  EXPECT_LT(rel(beta_low(in).value, 0.0346363), 1e-5);
}

TEST(BetaUp, ReferenceValues) {
  EXPECT_LT(rel(beta_up(input(1.0)).value, 4.462556), 1e-6);
  EXPECT_LT(rel(beta_up(input(2.0)).value, 13.877164), 1e-6);
  EXPECT_LT(rel(beta_up(input(1.0, 0.5, 7.0 / 6.0)).value, 4.929122), 1e-6);
}

TEST(BetaUp, OptimumIsLocalMinimum) {
  const BoundsInput in = input(1.5);
  const Extremum up = beta_up(in);
  for (double d : {-1e-3, 1e-3}) EXPECT_GE(beta_up_objective(up.a_star + d, in), up.value);
  EXPECT_LT(rel(up.value, beta_up_objective(up.a_star, in)), 1e-12);
  EXPECT_GT(up.et_alpha, 1.0);
}

TEST(BetaLow, OptimumIsLocalMaximum) {
  const BoundsInput in = input(0.7, 0.8, 1.2);
  const Extremum lo = beta_low(in);
  for (double d : {-1e-3, 1e-3}) EXPECT_LE(beta_low_objective(lo.a_star + d, in), lo.value);
}

TEST(Bracket, ScalesWithConstants) {
  BoundsInput in = input(1.0);
  in.c1 = 0.5;
  in.c2 = 2.0;
  const BoundsResult b = compute_bounds(in);
  const auto [lo, hi] = expected_weight_bracket(10000.0, b);
  EXPECT_LT(rel(lo, 0.5 * b.low.value * 100.0), 1e-12);
  EXPECT_LT(rel(hi, 2.0 * b.up.value * 100.0), 1e-12);
  EXPECT_LT(lo, hi);
}

TEST(Bracket, DeviationAndMoments) {
  const BoundsInput in = input(1.0);
  const double n = 1e8;
  const double c1 = c1_of_A(1.0, in);
  EXPECT_LT(rel(lower_deviation_threshold(n, 1.0, in), c1 * 1e4 * (1.0 - 4.0 / 100.0)), 1e-12);
  EXPECT_LT(rel(lower_deviation_threshold(n, 1.0, in, 36.0), c1 * 1e4 * (1.0 - 36.0 / 100.0)), 1e-12);
  const auto [lo, hi] = moment_bracket(n, 1.0, 2, in);
  EXPECT_LT(rel(lo, c1 * c1 * (1.0 - 72.0 / 100.0)), 1e-12);
  const double c2 = c2_of_A(1.0, in);
  EXPECT_LT(rel(hi, c2 * c2 * (1.0 + 4.0 / std::pow(n, 1.0 / 16.0))), 1e-12);
}

TEST(Chernoff, ValuesAndDomain) {
  EXPECT_LT(rel(chernoff_bound(2.0, 1.0, 0.5 - 1e-15, Tail::Upper), std::exp(-0.125)), 1e-12);
  EXPECT_LT(rel(chernoff_bound(100.0, 0.1, 0.2, Tail::Lower), std::exp(-0.1)), 1e-14);
  for (double eps : {0.0, 0.5, 0.7, -0.1}) {
    try {
      chernoff_bound(1.0, 1.0, eps, Tail::Upper);
      FAIL() << eps;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidEps);
    }
  }
}

TEST(Input, Validation) {
  EXPECT_THROW(input(0.0).validate(), Error);
  EXPECT_THROW(input(1.0, 2.0, 1.0).validate(), Error);
  BoundsInput in = input(1.0);
  in.c1 = 3.0;
  EXPECT_THROW(in.validate(), Error);
  EXPECT_NO_THROW(input(1.0).validate());
  EXPECT_DOUBLE_EQ(input(0.5, 0.2, 3.0).delta(), 0.2);
  EXPECT_DOUBLE_EQ(input(2.0, 0.2, 3.0).delta(), 3.0);
}

TEST(BoundsJson, Fields) {
  const auto j = nlohmann::json::parse(bounds_to_json(compute_bounds(input(1.0))));
  EXPECT_TRUE(j.contains("beta_low"));
  EXPECT_TRUE(j.contains("beta_up"));
  EXPECT_TRUE(j.contains("A_up"));
  EXPECT_LT(rel(j["beta_low"].get<double>(), 0.0735633), 1e-6);
}
