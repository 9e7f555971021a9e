#include <cmath>

#include "doctest.h"
#include "teamlab/harness.hpp"

using namespace teamlab;

namespace {

GridSpec small_grid() {
  GridSpec g;
  g.productivity = {15.0, 25.0};
  g.returns_exponent = {0.45, 0.55};
  g.effort_cost = {2.0, 3.0};
  g.team_size = {3, 5};
  g.loyalty = {0.0, 0.45, 0.9};
  return g;
}

}  // namespace

TEST_CASE("grid enumeration") {
  GridSpec g;
  CHECK(g.size() == 3125);
  CHECK(g.combination_count() == 625);
  const auto points = generate_grid(g);
  REQUIRE(points.size() == 3125);
  CHECK(points[0].config == TeamConfig{10.0, 0.40, 1.5, 3, 10.0});
  CHECK(points[1].loyalty == 0.225);
  CHECK(points[5].config.team_size == 4);
  CHECK(points[5].combination == 1);
  CHECK(points.back().config == TeamConfig{30.0, 0.60, 3.5, 8, 10.0});

  GridSpec one;
  one.productivity = {20};
  one.returns_exponent = {0.5};
  one.effort_cost = {2.5};
  one.team_size = {5};
  one.loyalty = {0.5};
  CHECK(generate_grid(one).size() == 1);

  GridSpec four = one;
  four.productivity = {10, 20};
  four.loyalty = {0.1, 0.9};
  const auto p4 = generate_grid(four);
  REQUIRE(p4.size() == 4);
  CHECK(p4[0].config.productivity == 10);
  CHECK(p4[0].loyalty == 0.1);
  CHECK(p4[1].loyalty == 0.9);
  CHECK(p4[2].config.productivity == 20);

  GridSpec bad = g;
  bad.loyalty.clear();
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = g;
  bad.team_size = {1};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("synergy") {
  CHECK(*synergy_ratio(1.2, 5.8, 4.2, 13.6) == doctest::Approx(12.4 / 7.6));
  CHECK(*synergy_ratio(1.2, 5.8, 4.2, 13.6) == doctest::Approx(1.63).epsilon(1e-2));
  CHECK_FALSE(synergy_ratio(1.0, 1.0, 1.0, 1.0).has_value());

  const auto none = synergy_analysis(TeamConfig{}, 0.9, MechanismStrengths{0.0, 0.0});
  CHECK(none.combined == doctest::Approx(none.baseline));
  CHECK_FALSE(none.ratio.has_value());

  const auto r = synergy_analysis(TeamConfig{}, 0.9, MechanismStrengths{});
  CHECK(r.benefit_only > r.baseline);
  CHECK(r.cost_only > r.baseline);
  REQUIRE(r.ratio);
  CHECK(*r.ratio > 1.1);
}

TEST_CASE("differentiation") {
  const auto d = effort_differentiation(TeamConfig{}, MechanismStrengths{});
  CHECK(d.ratio > 2.0);
  CHECK_FALSE(d.infinite);
  CHECK(effort_differentiation(TeamConfig{}, MechanismStrengths{}, 0.5, 0.5).ratio == doctest::Approx(1.0));
}

TEST_CASE("cap ties") {
  CHECK(increasing_with_cap_ties({1, 2, 3}, 10));
  CHECK(increasing_with_cap_ties({1, 10, 10}, 10));
  CHECK_FALSE(increasing_with_cap_ties({1, 2, 2}, 10));
  CHECK_FALSE(increasing_with_cap_ties({3, 2}, 10));
  CHECK(decreasing_with_cap_ties({10, 10, 4}, 10));
  CHECK_FALSE(decreasing_with_cap_ties({4, 4}, 10));
}

TEST_CASE("targets on a small grid") {
  const auto g = small_grid();
  const auto result = run_sweep(g, SweepOptions{1, 7, 500, {}});
  CHECK(result.rows.size() == g.size());
  const auto& t = result.targets.targets;
  CHECK(t[kLoyaltyMonotonicity].fraction == 1.0);
  CHECK(t[kBoundedOutcomes].fraction == 1.0);
  CHECK(t[kTeamSizeEffect].fraction == 1.0);
  CHECK(t[kFreeRidingBaseline].fraction >= 0.95);
  CHECK(t[kTeamSizeEffect].applicable == g.productivity.size() * g.returns_exponent.size() *
                                             g.effort_cost.size() * g.team_size.size());
  // Synergy is not defined at loyalty 0.
  CHECK(t[kMechanismSynergy].applicable == result.rows.size() * 2 / 3);
  for (const auto& row : result.targets.detail) CHECK(row[kBoundedOutcomes].has_value());
}

TEST_CASE("one-configuration grid reports every target") {
  GridSpec one;
  one.productivity = {20};
  one.returns_exponent = {0.5};
  one.effort_cost = {2.5};
  one.team_size = {5};
  one.loyalty = {0.5};
  const auto r = run_sweep(one, SweepOptions{1, 1, 100, {}});
  REQUIRE(r.targets.detail.size() == 1);
  CHECK(r.targets.detail[0][kBoundedOutcomes] == true);
  CHECK(r.targets.detail[0][kLoyaltyMonotonicity] == true);
}

TEST_CASE("missing auxiliary solutions are rejected") {
  const auto g = small_grid();
  std::vector<CombinationResult> combos(g.combination_count());
  CHECK_THROWS_AS(evaluate_targets(g, combos), ValidationError);
}

TEST_CASE("worker count does not change results") {
  const auto g = small_grid();
  const auto one = run_sweep(g, SweepOptions{1, 99, 300, {}});
  const auto four = run_sweep(g, SweepOptions{4, 99, 300, {}});
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].solution.effort == four.rows[i].solution.effort);
    CHECK(one.rows[i].solution.synergy == four.rows[i].solution.synergy);
  }
  CHECK(one.aggregates.effort_bootstrap.ci_low == four.aggregates.effort_bootstrap.ci_low);
  CHECK(one.targets.detail == four.targets.detail);

  const auto a = monte_carlo_robustness(GridSpec{}, 0.15, 50, 5, 1);
  const auto b = monte_carlo_robustness(GridSpec{}, 0.15, 50, 5, 3);
  CHECK(a.differentiation_mean == b.differentiation_mean);
  CHECK(a.monotonic_fraction == b.monotonic_fraction);
}

TEST_CASE("robustness") {
  const auto r = monte_carlo_robustness(GridSpec{}, 0.15, 200, 11);
  CHECK(r.trials == 200);
  CHECK(r.monotonic_fraction == 1.0);
  CHECK(r.trial_records.size() == 200);

  const auto flat = monte_carlo_robustness(GridSpec{}, 0.0, 20, 11);
  const auto baseline = effort_differentiation(GridSpec{}.default_point, GridSpec{}.mech);
  for (const auto& t : flat.trial_records) {
    CHECK(t.config == GridSpec{}.default_point);
    CHECK(t.differentiation.ratio == baseline.ratio);
  }
  CHECK(flat.differentiation_sd == doctest::Approx(0.0));
  CHECK_THROWS_AS(monte_carlo_robustness(GridSpec{}, 1.5, 10, 1), ValidationError);
  CHECK_THROWS_AS(monte_carlo_robustness(GridSpec{}, 0.1, 0, 1), ValidationError);
}
