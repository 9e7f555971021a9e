#include <random>

#include "doctest.h"
#include "oracle_values.hpp"
#include "teamlab/translation.hpp"

using namespace teamlab;

namespace {

MemberFactors human_row(double tenure, double social, double criticality, double commitment) {
  return MemberFactors{"m", {{"tenure", tenure}, {"social", social}, {"criticality", criticality},
                             {"commitment", commitment}}, std::nullopt};
}

std::vector<DependencyRecord> apache_records() {
  return {{"robinson", "bug fixes", 0.50},        {"wilson", "testing", 0.50},
          {"terbush", "module development", 0.55}, {"skolnick", "build infrastructure", 0.60},
          {"hartill", "core server code", 0.70},  {"thau", "core server code", 0.75},
          {"behlendorf", "community coordination", 0.85}, {"fielding", "architectural decisions", 0.90},
          {"fielding", "code review", 0.70}};
}

}  // namespace

TEST_CASE("loyalty score") {
  const auto w = FactorWeights::human_default();
  CHECK(loyalty_score(human_row(0, 0, 0, 0), w) == 0.0);
  CHECK(loyalty_score(human_row(1, 1, 1, 1), w) == doctest::Approx(1.0));
  CHECK(loyalty_score(human_row(1.00, 0.90, 0.22, 0.95), w) == doctest::Approx(oracle::kM1LoyaltyScore));

  auto m1 = human_row(1.00, 0.90, 0.22, 0.95);
  CHECK(assessed_loyalty(m1, w) == doctest::Approx(oracle::kM1LoyaltyScore));
  m1.loyalty_override = 0.93;
  CHECK(assessed_loyalty(m1, w) == 0.93);

  CHECK(loyalty_score(MemberFactors{"a", {{"training", 1}, {"architecture", 1}, {"objective", 1}, {"history", 1}}},
                      FactorWeights::agent_default()) == doctest::Approx(1.0));

  CHECK_THROWS_AS(loyalty_score(human_row(1.2, 0, 0, 0), w), ValidationError);
  CHECK_THROWS_AS(loyalty_score(MemberFactors{"m", {{"tenure", 1.0}}}, w), ValidationError);
  CHECK_THROWS_AS((FactorWeights{{{"a", 0.5}, {"b", 0.6}}}.validate()), ValidationError);
}

TEST_CASE("tenure and goal weights") {
  CHECK(tenure_score(12) == doctest::Approx(0.5));
  CHECK(tenure_score(36) == 1.0);
  CHECK(tenure_score(0) == 0.0);
  CHECK_THROWS_AS(tenure_score(-1), ValidationError);
  CHECK(goal_weight_loyalty(0.90, 0.10) == doctest::Approx(0.90));
  CHECK_THROWS_AS(goal_weight_loyalty(0.0, 0.0), ValidationError);
}

TEST_CASE("dependency coefficients") {
  const auto d = dependency_coefficients(apache_records());
  CHECK(d.at("fielding") == doctest::Approx(1.60 / 6.05));
  CHECK(d.at("fielding") == doctest::Approx(0.2645).epsilon(1e-3));
  double sum = 0.0;
  for (const auto& [k, v] : d) sum += v;
  CHECK(sum == doctest::Approx(1.0));

  CHECK(dependency_coefficients({{"a", "x", 0.4}}).at("a") == 1.0);
  const auto two = dependency_coefficients({{"a", "x", 0.4}, {"b", "y", 0.4}});
  CHECK(two.at("a") == 0.5);
  CHECK(two.at("b") == 0.5);
  CHECK_THROWS_AS(dependency_coefficients({}), ValidationError);
  CHECK_THROWS_AS(dependency_coefficients({{"a", "x", 1.5}}), ValidationError);
}

TEST_CASE("team cohesion") {
  const std::map<std::string, double> loyal{{"a", 0.2}, {"b", 0.6}, {"c", 0.9}};
  CHECK(team_cohesion({{"a", 1}, {"b", 1}, {"c", 1}}, loyal) == doctest::Approx((0.2 + 0.6 + 0.9) / 3));
  CHECK(team_cohesion({{"a", 0.1}, {"b", 0.7}, {"c", 0.2}}, {{"a", 0.4}, {"b", 0.4}, {"c", 0.4}}) ==
        doctest::Approx(0.4));

  const std::map<std::string, double> w{{"M1", .22}, {"M2", .20}, {"M3", .12}, {"M4", .12}, {"M5", .18}, {"M6", .16}};
  const std::map<std::string, double> t{{"M1", .93}, {"M2", .74}, {"M3", .43}, {"M4", .38}, {"M5", .56}, {"M6", .50}};
  CHECK(team_cohesion(w, t) == doctest::Approx(oracle::kTeamTCohesion).epsilon(1e-12));
  CHECK_THROWS_AS(team_cohesion({{"x", 1.0}}, t), ValidationError);
}

TEST_CASE("cohesion is scale invariant in the weights") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.01, 1.0), s(0.01, 100.0);
  for (int k = 0; k < 1000; ++k) {
    std::map<std::string, double> w, t, scaled;
    const double factor = s(rng);
    for (int i = 0; i < 5; ++i) {
      const std::string id = "m" + std::to_string(i);
      w[id] = u(rng);
      t[id] = u(rng);
      scaled[id] = w[id] * factor;
    }
    CHECK(team_cohesion(scaled, t) == doctest::Approx(team_cohesion(w, t)).epsilon(1e-12));
  }
}

TEST_CASE("bargaining power and loyalty gaps") {
  CHECK(effective_bargaining_power(0.8, 1.0) == 0.8);
  CHECK(effective_bargaining_power(0.8, 0.0) == 0.0);
  CHECK(effective_bargaining_power(0.8, 0.62) == doctest::Approx(0.496));
  CHECK(loyalty_gap(0.5, 0.5) == 0.0);
  CHECK(loyalty_gap(0.9, 0.5) == doctest::Approx(0.4));
  CHECK(is_intervention_candidate(loyalty_gap(0.9, 0.5)));
  CHECK(loyalty_gap(0.5, 0.9) == doctest::Approx(-0.4));
  CHECK_FALSE(is_intervention_candidate(loyalty_gap(0.5, 0.9)));
  CHECK_FALSE(is_intervention_candidate(0.3));
}
