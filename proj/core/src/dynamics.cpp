#include "teamlab/dynamics.hpp"

#include <algorithm>
#include <numeric>

namespace teamlab {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

constexpr double kRegimeMargin = 0.05;

}  // namespace

void DynamicsSettings::validate() const {
  if (periods < 1) throw ValidationError("periods must be >= 1");
  if (!(learning_rate >= 0.0)) throw ValidationError("learning_rate must be >= 0");
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kVirtuous: return "virtuous";
    case Regime::kVicious: return "vicious";
    case Regime::kStationary: return "stationary";
  }
  return "stationary";
}

double default_output_target(const TeamConfig& config, const MechanismStrengths& mech,
                             const SolverSettings& solver) {
  const auto low = solve_tpe(config, mech, LoyaltyProfile::uniform(config.team_size, 0.0), solver);
  const auto high = solve_tpe(config, mech, LoyaltyProfile::uniform(config.team_size, 0.9), solver);
  return 0.5 * (team_output(config, low.profile) + team_output(config, high.profile));
}

Trajectory simulate_loyalty_evolution(const TeamConfig& config, const MechanismStrengths& mech,
                                      const LoyaltyProfile& initial, const DynamicsSettings& settings,
                                      const SolverSettings& solver) {
  settings.validate();
  initial.validate(config);
  Trajectory out;
  out.output_target = settings.output_target.value_or(default_output_target(config, mech, solver));
  out.states.reserve(static_cast<std::size_t>(settings.periods) + 1);

  LoyaltyProfile loyalty = initial;
  for (int t = 0; t <= settings.periods; ++t) {
    const auto eq = solve_tpe(config, mech, loyalty, solver);
    const double q = team_output(config, eq.profile);
    out.states.push_back(PeriodState{t, loyalty, eq.profile, q, eq.converged});
    const double shift = settings.learning_rate * (q - out.output_target);
    for (double& theta : loyalty.values) theta = std::clamp(theta + shift, 0.0, 1.0);
  }
  return out;
}

Regime classify_regime(const Trajectory& trajectory) {
  const auto& states = trajectory.states;
  if (states.size() < 2) throw ValidationError("trajectory needs at least two states");
  const double initial = mean_of(states.front().loyalty.values);
  const std::size_t quarter = std::max<std::size_t>(1, states.size() / 4);
  double final_mean = 0.0;
  for (std::size_t i = states.size() - quarter; i < states.size(); ++i) {
    final_mean += mean_of(states[i].loyalty.values);
  }
  final_mean /= static_cast<double>(quarter);
  if (final_mean - initial > kRegimeMargin) return Regime::kVirtuous;
  if (initial - final_mean > kRegimeMargin) return Regime::kVicious;
  return Regime::kStationary;
}

}  // namespace teamlab
