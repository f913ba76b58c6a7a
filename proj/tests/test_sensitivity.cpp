#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "reference_tables.hpp"
#include "transition/sensitivity.hpp"

using namespace transition;

TEST(Parameters, NamesRoundTrip) {
  for (const auto& [id, name] : kParameterNames) {
    ASSERT_EQ(parse_parameter(name), id);
    ASSERT_EQ(to_string(id), name);
  }
  EXPECT_FALSE(parse_parameter("gamma").has_value());
  EXPECT_TRUE(is_policy_parameter(Parameter::pr2));
  EXPECT_FALSE(is_policy_parameter(Parameter::margin));
}

TEST(PerturbationGrid, MatchesReferenceGrid) {
  const auto k = perturbation_grid(Parameter::k, 2.0);
  ASSERT_EQ(k.size(), 5u);
  EXPECT_DOUBLE_EQ(k[0], 1.0);
  EXPECT_DOUBLE_EQ(k[4], 3.0);
  const auto beta = perturbation_grid(Parameter::beta, 0.8);
  ASSERT_EQ(beta.size(), 5u);
  EXPECT_DOUBLE_EQ(beta[4], 1.0); // +50% capped
  EXPECT_EQ(perturbation_grid(Parameter::beta, 1.0).size(), 3u);
}

TEST(RunSweep, KBlock) {
  const auto rows = run_sweep({Parameter::k, {1.0, 1.8, 2.0, 2.2, 3.0}, FirmParams{}});
  const double alpha[] = {0.1399250, 0.3560002, 0.3758660, 0.3896782, 0.4102122};
  const double best[] = {40.38998, 48.03570, 50.43508, 52.88084, 62.52014};
  ASSERT_EQ(rows.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(rows[i].optimal_alpha, alpha[i], 1e-4);
    EXPECT_NEAR(rows[i].max_objective, best[i], 1e-3);
  }
  EXPECT_EQ(rows[2].alpha_change_rate_pct, 0.0);
  EXPECT_EQ(rows[2].profit_change_rate_pct, 0.0);
}

TEST(RunSweep, SingleValues) {
  const auto c = run_sweep({Parameter::c, {2.40}, FirmParams{}});
  EXPECT_NEAR(c[0].optimal_alpha, 0.5191683, 1e-4);
  EXPECT_NEAR(c[0].max_objective, 22.16245, 1e-3);
  EXPECT_NEAR(c[0].alpha_change_rate_pct, 38.125899, 1e-3);
  EXPECT_NEAR(c[0].profit_change_rate_pct, -56.05747, 1e-3);

  const auto beta = run_sweep({Parameter::beta, {1.00}, FirmParams{}});
  EXPECT_NEAR(beta[0].optimal_alpha, 0.2971025, 1e-4);
  EXPECT_NEAR(beta[0].max_objective, 116.72607, 1e-3);
  EXPECT_NEAR(beta[0].profit_change_rate_pct, 131.43825, 1e-3);
}

TEST(RunSweep, Errors) {
  EXPECT_THROW(run_sweep({Parameter::beta, {0.9, 1.1}, FirmParams{}}), DomainError);
  EXPECT_THROW(run_sweep({Parameter::k, {}, FirmParams{}}), DomainError);
  EXPECT_THROW(run_sweep({Parameter::k, {1.0, 1.0}, FirmParams{}}), DomainError);
  EXPECT_THROW(run_sweep({Parameter::k, {2.0, 1.0}, FirmParams{}}), DomainError);
  EXPECT_THROW(run_sweep({Parameter::s1, {0.1}, FirmParams{}}), DomainError);
}

TEST(SensitivityTable, ReproducesReference) {
  const auto rows = sensitivity_table();
  ASSERT_EQ(rows.size(), reference::kSensitivity.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& ref = reference::kSensitivity[i];
    SCOPED_TRACE(std::string(ref.parameter) + "=" + std::to_string(ref.value));
    EXPECT_EQ(to_string(rows[i].parameter), ref.parameter);
    EXPECT_NEAR(rows[i].parameter_value, ref.value, 1e-12);
    EXPECT_NEAR(rows[i].optimal_alpha, ref.alpha, 1e-4);
    EXPECT_NEAR(rows[i].max_objective, ref.objective, 1e-3);
    EXPECT_NEAR(rows[i].alpha_change_rate_pct, ref.alpha_change_pct, 1e-3);
    EXPECT_NEAR(rows[i].profit_change_rate_pct, ref.profit_change_pct, 1e-3);
  }
}

TEST(SensitivityTable, BaselineRowIsStableAcrossBlocks) {
  for (const auto& r : sensitivity_table()) {
    if (r.alpha_change_rate_pct != 0.0) continue;
    EXPECT_NEAR(r.optimal_alpha, 0.3758660, 1e-4);
    EXPECT_NEAR(r.max_objective, 50.43508, 1e-3);
  }
}

TEST(SensitivityTable, Monotonicity) {
  const auto rows = sensitivity_table();
  auto block = [&](std::string_view name) {
    std::vector<SweepRow> out;
    for (const auto& r : rows)
      if (to_string(r.parameter) == name) out.push_back(r);
    return out;
  };
  auto strictly = [](const std::vector<SweepRow>& b, auto field, bool increasing) {
    for (std::size_t i = 1; i < b.size(); ++i) {
      const double prev = field(b[i - 1]), cur = field(b[i]);
      if (increasing) EXPECT_GT(cur, prev);
      else EXPECT_LT(cur, prev);
    }
  };
  auto alpha = [](const SweepRow& r) { return r.optimal_alpha.value; };
  auto obj = [](const SweepRow& r) { return r.max_objective; };
  strictly(block("B"), alpha, true);
  strictly(block("c"), alpha, true);
  strictly(block("beta"), alpha, false);
  strictly(block("B"), obj, false);
  strictly(block("c"), obj, false);
  strictly(block("k"), obj, true);
  strictly(block("beta"), obj, true);
}

TEST(SensitivityTable, ChangeRatesSelfConsistent) {
  const auto rows = sensitivity_table();
  const SweepRow& base = rows[2];
  for (const auto& r : rows) {
    const double ar = 100.0 * (r.optimal_alpha - base.optimal_alpha) / base.optimal_alpha;
    const double pr = 100.0 * (r.max_objective - base.max_objective) / base.max_objective;
    EXPECT_NEAR(r.alpha_change_rate_pct, ar, 1e-6 * std::max(1.0, std::abs(ar)));
    EXPECT_NEAR(r.profit_change_rate_pct, pr, 1e-6 * std::max(1.0, std::abs(pr)));
  }
}

TEST(MarginSweep, Shape) {
  const auto rows = margin_sweep({-0.5, 2.0, 50.0});
  EXPECT_NEAR(rows[1].optimal_alpha, 0.3758660, 1e-4);
  EXPECT_GE(rows[0].optimal_alpha, rows[1].optimal_alpha);
  EXPECT_LT(rows[2].optimal_alpha, rows[1].optimal_alpha);

  // Grid oracle agrees on the direction.
  auto grid_alpha = [](double margin) {
    oracle::Firm f = oracle::kBaseline;
    f.p = f.c + margin;
    return oracle::grid_argmax([&](double a) { return oracle::profit(f, a); }, 20001).first;
  };
  EXPECT_GE(grid_alpha(-0.5), grid_alpha(2.0));
  EXPECT_LT(grid_alpha(50.0), grid_alpha(2.0));
}

TEST(MarginSweep, NonIncreasingAfterPlateau) {
  // Non-positive margins sit on the alpha = 1 - 1e-9 plateau; beyond it the
  // optimal ratio only falls as the margin grows.
  const auto rows = margin_sweep(linspace(-0.5, 5.0, 56));
  EXPECT_NEAR(rows.front().optimal_alpha, kAlphaMax, 1e-6);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_LE(rows[i].optimal_alpha, rows[i - 1].optimal_alpha + 1e-7) << "row " << i;
  EXPECT_LT(rows.back().optimal_alpha, 0.3);
}

TEST(Grids, LinspaceAndArange) {
  const auto l = linspace(0.0, 1.0, 5);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l.back(), 1.0);
  EXPECT_DOUBLE_EQ(l[1], 0.25);
  const auto a = arange(0.5, 1.0, 0.01);
  ASSERT_EQ(a.size(), 51u);
  EXPECT_NEAR(a[40], 0.9, 1e-12);
  EXPECT_NEAR(a.back(), 1.0, 1e-12);
  EXPECT_THROW(arange(1.0, 0.5, 0.1), ParseError);
}
