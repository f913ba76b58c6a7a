#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "transition/model.hpp"

using namespace transition;

namespace {

FirmParams to_params(const oracle::Firm& f) { return {f.p, f.c, f.A, f.k, f.beta, f.B}; }

} // namespace

TEST(SigmoidGain, Values) {
  EXPECT_DOUBLE_EQ(sigmoid_gain(0.0, 2.0), 1.0);
  EXPECT_NEAR(sigmoid_gain(1.0, 60.0), 2.0, 1e-12);
  EXPECT_NEAR(sigmoid_gain(1.0, std::log(3.0)), 1.5, 1e-14);
  EXPECT_NEAR(sigmoid_gain(0.5, 2.0 * std::log(3.0)), 1.5, 1e-14);
}

TEST(CarbonIntensity, Values) {
  for (double k : {0.0, 1.0, 2.0, 7.5}) EXPECT_DOUBLE_EQ(carbon_intensity(0.0, k), 1.0);
  EXPECT_NEAR(carbon_intensity(1.0, std::log(3.0)), 0.5, 1e-14);
  EXPECT_NEAR(carbon_intensity(1.0, 60.0), 0.0, 1e-12);
  EXPECT_GT(carbon_intensity(1.0, 60.0), 0.0);
}

TEST(CarbonIntensity, IsTwoMinusGainAndDecreasing) {
  double prev = 2.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.02 * i;
    const double ci = carbon_intensity(1.0, x);
    EXPECT_NEAR(ci, 2.0 - sigmoid_gain(1.0, x), 1e-15);
    EXPECT_GT(ci, 0.0);
    EXPECT_LE(ci, 1.0);
    EXPECT_LT(ci, prev);
    prev = ci;
  }
}

TEST(Units, BaselineValues) {
  const FirmParams f;
  EXPECT_NEAR(units(f, Alpha{0.0}), 39.810717055349734, 1e-12);
  EXPECT_EQ(units(f, Alpha{1.0}), 0.0);
  // 1.35911 * 62.4134^0.8 evaluated independently.
  EXPECT_NEAR(units(f, Alpha{0.3758660}), 37.10885, 1e-4);
}

TEST(Units, RejectsInvalidInputs) {
  FirmParams f;
  f.A = 0.0;
  EXPECT_THROW(units(f, Alpha{0.1}), DomainError);
  f = FirmParams{};
  EXPECT_THROW(units(f, Alpha{1.2}), DomainError);
  EXPECT_THROW(units(f, Alpha{-0.1}), DomainError);
}

TEST(Validate, NamesViolatedInvariant) {
  FirmParams f;
  f.beta = 1.5;
  try {
    validate(f);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
  }
  f.beta = 1.0; // allowed
  EXPECT_NO_THROW(validate(f));
  f.beta = 0.0;
  EXPECT_THROW(validate(f), DomainError);
  f = FirmParams{};
  f.k = -1.0;
  EXPECT_THROW(validate(f), DomainError);
  f = FirmParams{};
  f.B = -0.1;
  EXPECT_THROW(validate(f), DomainError);
  f = FirmParams{};
  f.c = -0.1;
  EXPECT_THROW(validate(f), DomainError);
}

TEST(ProfitBreakdown, BaselineValues) {
  const FirmParams f;
  EXPECT_NEAR(profit(f, Alpha{0.0}), 39.810717055349734, 1e-12);
  EXPECT_NEAR(profit(f, Alpha{0.3758660}), 50.43508, 1e-3);

  FirmParams flat;
  flat.p = flat.c;
  flat.B = 0.0;
  for (double a : {0.0, 0.3, 0.9}) EXPECT_EQ(profit(flat, Alpha{a}), 0.0);
}

TEST(ProfitBreakdown, MatchesTermByTermOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const oracle::Firm of = oracle::random_firm(rng);
    const double a = alpha(rng);
    EXPECT_NEAR(profit(to_params(of), Alpha{a}), oracle::profit(of, a),
                1e-10 * std::max(1.0, std::abs(oracle::profit(of, a))));
  }
}

TEST(ProfitBreakdown, DecompositionIdentity) {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const FirmParams f = to_params(oracle::random_firm(rng));
    const ProfitBreakdown b = profit_breakdown(f, Alpha{alpha(rng)});
    ASSERT_LE(std::abs(b.revenue - b.production_cost - b.carbon_cost - b.profit),
              1e-9 * std::max(1.0, std::abs(b.revenue)));
    ASSERT_DOUBLE_EQ(b.carbon_emission, b.carbon_intensity * b.units);
    ASSERT_GT(b.carbon_intensity, 0.0);
    ASSERT_LE(b.carbon_intensity, 1.0);
  }
}

TEST(ProfitBreakdown, ZeroCarbonPriceReduction) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    FirmParams f = to_params(oracle::random_firm(rng));
    f.B = 0.0;
    const Alpha a{alpha(rng)};
    ASSERT_EQ(profit(f, a), (f.p - f.c) * units(f, a));
  }
}

TEST(ProfitBreakdown, FullDiversionGivesZero) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const FirmParams f = to_params(oracle::random_firm(rng));
    const ProfitBreakdown b = profit_breakdown(f, Alpha{1.0});
    ASSERT_EQ(b.units, 0.0);
    ASSERT_EQ(b.profit, 0.0);
  }
}

TEST(ProfitDerivative, BaselineSigns) {
  const FirmParams f;
  EXPECT_NEAR(profit_derivative(f, Alpha{0.3758660}, 1), 0.0, 1e-3);
  EXPECT_LT(profit_derivative(f, Alpha{0.3758660}, 2), 0.0);
  EXPECT_GT(profit_derivative(f, Alpha{0.05}, 1), 0.0);
  EXPECT_GT(profit(f, Alpha{0.06}), profit(f, Alpha{0.04}));
}

TEST(ProfitDerivative, GuardBand) {
  const FirmParams f;
  EXPECT_THROW(profit_derivative(f, Alpha{0.0}, 1), DomainError);
  EXPECT_THROW(profit_derivative(f, Alpha{kAlphaMax}, 1), DomainError);
  EXPECT_THROW(profit_derivative(f, Alpha{5e-6}, 2), DomainError);
  EXPECT_THROW(profit_derivative(f, Alpha{0.5}, 3), DomainError);
  EXPECT_NO_THROW(profit_derivative(f, Alpha{kDerivativeStep}, 1));
}

TEST(ProfitDerivative, AgreesWithProductRule) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha(0.05, 0.9);
  for (int i = 0; i < 500; ++i) {
    const oracle::Firm of = oracle::random_firm(rng);
    const double a = alpha(rng);
    const double exact = oracle::profit_slope(of, a);
    ASSERT_NEAR(profit_derivative(to_params(of), Alpha{a}, 1), exact,
                1e-5 * std::max(1.0, std::abs(exact)) + 1e-6 * std::abs(oracle::profit(of, a)));
  }
}

TEST(ProfitDerivative, SecondOrderConvergence) {
  // Halving the step should cut the central-difference error by ~4.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> alpha(0.1, 0.8);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const oracle::Firm of = oracle::random_firm(rng);
    const double a = alpha(rng);
    const double exact = oracle::profit_slope(of, a);
    const FirmParams f = to_params(of);
    const double e1 = std::abs(profit_derivative(f, Alpha{a}, 1, 1e-2) - exact);
    const double e2 = std::abs(profit_derivative(f, Alpha{a}, 1, 5e-3) - exact);
    if (e1 < 1e-9 * std::max(1.0, std::abs(exact))) continue; // already at round-off
    ++checked;
    EXPECT_NEAR(e1 / e2, 4.0, 0.5) << "alpha=" << a;
  }
  EXPECT_GT(checked, 80);
}

// The reduced closed forms keep only the margin factor and an alpha-only
// curvature term. At baseline the reduced first-order expression has no root
// on [0, 1): its margin factor p - c - CI*B stays positive because CI <= 1.
// The true slope changes sign at the maximizer.
TEST(ReducedClosedForms, DoNotLocateTheOptimum) {
  const FirmParams f;
  for (int i = 0; i < 1000; ++i) {
    const double a = 0.999 * i / 999.0;
    EXPECT_GT(reduced_first_order_condition(f, Alpha{a}), 0.0);
  }
  EXPECT_GT(profit_derivative(f, Alpha{0.2}, 1), 0.0);
  EXPECT_LT(profit_derivative(f, Alpha{0.6}, 1), 0.0);

  // Its curvature disagrees with the numerical second derivative too.
  const double reduced = reduced_second_derivative(f, Alpha{0.3758660});
  const double numeric = profit_derivative(f, Alpha{0.3758660}, 2);
  EXPECT_LT(numeric, 0.0);
  EXPECT_GT(std::abs(reduced - numeric), 0.1 * std::abs(numeric));
}
