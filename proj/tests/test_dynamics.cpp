#include "doctest.h"
#include "oracle_values.hpp"
#include "teamlab/dynamics.hpp"

using namespace teamlab;

namespace {

Trajectory synthetic(std::initializer_list<double> means) {
  Trajectory t;
  int period = 0;
  for (double m : means) t.states.push_back(PeriodState{period++, LoyaltyProfile{{m, m}}, {}, 0.0, true});
  return t;
}

double mean_loyalty(const PeriodState& s) {
  double sum = 0.0;
  for (double v : s.loyalty.values) sum += v;
  return sum / static_cast<double>(s.loyalty.values.size());
}

}  // namespace

TEST_CASE("default target") {
  CHECK(default_output_target(TeamConfig{}, MechanismStrengths{}) ==
        doctest::Approx(oracle::kDynamicsTarget).epsilon(1e-6));
}

TEST_CASE("trajectory follows the update rule") {
  DynamicsSettings s;
  s.periods = 5;
  s.learning_rate = 0.002;
  const auto t = simulate_loyalty_evolution(TeamConfig{}, MechanismStrengths{}, LoyaltyProfile::uniform(5, 0.5), s);
  REQUIRE(t.states.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(t.states[k].period == static_cast<int>(k));
    CHECK(t.states[k].converged);
    CHECK(mean_loyalty(t.states[k]) == doctest::Approx(oracle::kDynamicsLoyalty[k]).epsilon(1e-6));
    CHECK(t.states[k].output == doctest::Approx(oracle::kDynamicsOutput[k]).epsilon(1e-6));
  }
}

TEST_CASE("zero rate freezes loyalty") {
  DynamicsSettings s;
  s.learning_rate = 0.0;
  const LoyaltyProfile start{{0.1, 0.4, 0.4, 0.7, 0.9}};
  const auto t = simulate_loyalty_evolution(TeamConfig{}, MechanismStrengths{}, start, s);
  REQUIRE(t.states.size() == 51);
  for (const auto& st : t.states) CHECK(st.loyalty == start);
  CHECK(classify_regime(t) == Regime::kStationary);
}

TEST_CASE("low target drives loyalty up to the clamp") {
  DynamicsSettings s;
  s.output_target = 1.0;
  s.periods = 30;
  const auto t = simulate_loyalty_evolution(TeamConfig{}, MechanismStrengths{}, LoyaltyProfile::uniform(5, 0.2), s);
  for (std::size_t k = 1; k < t.states.size(); ++k) {
    CHECK(mean_loyalty(t.states[k]) >= mean_loyalty(t.states[k - 1]));
  }
  CHECK(mean_loyalty(t.states.back()) == 1.0);
}

TEST_CASE("bifurcation") {
  DynamicsSettings s;
  const auto up = simulate_loyalty_evolution(TeamConfig{}, MechanismStrengths{}, LoyaltyProfile::uniform(5, 0.6), s);
  const auto down = simulate_loyalty_evolution(TeamConfig{}, MechanismStrengths{}, LoyaltyProfile::uniform(5, 0.1), s);
  CHECK(classify_regime(up) == Regime::kVirtuous);
  CHECK(mean_loyalty(up.states.back()) == 1.0);
  CHECK(classify_regime(down) == Regime::kVicious);
  CHECK(mean_loyalty(down.states.back()) == 0.0);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(synthetic({0.3, 0.3, 0.3, 0.3})) == Regime::kStationary);
  CHECK(classify_regime(synthetic({0.3, 0.45, 0.6, 0.7, 0.78})) == Regime::kVirtuous);
  CHECK(classify_regime(synthetic({0.3, 0.25, 0.2, 0.16, 0.14})) == Regime::kVicious);
  CHECK(to_string(Regime::kVirtuous) == "virtuous");
  CHECK_THROWS_AS(classify_regime(synthetic({0.3})), ValidationError);
}

TEST_CASE("dynamics validation") {
  DynamicsSettings s;
  s.learning_rate = -0.1;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = {};
  s.periods = 0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}
