#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teamlab/equilibrium.hpp"
#include "teamlab/model.hpp"

namespace teamlab {

struct DynamicsSettings {
  int periods = 50;
  double learning_rate = 0.02;
  std::optional<double> output_target;  // defaults to default_output_target()

  void validate() const;
};

struct PeriodState {
  int period = 0;
  LoyaltyProfile loyalty;
  ActionProfile efforts;
  double output = 0.0;
  bool converged = true;
};

/// One record per period, including the initial state (periods + 1 entries).
struct Trajectory {
  std::vector<PeriodState> states;
  double output_target = 0.0;
};

enum class Regime { kVirtuous, kVicious, kStationary };

std::string to_string(Regime regime);

/// Midpoint between the symmetric equilibrium outputs at loyalty 0 and 0.9.
double default_output_target(const TeamConfig& config, const MechanismStrengths& mech,
                             const SolverSettings& solver = {});

/// theta_i <- clamp(theta_i + rate (Q - Q_target), 0, 1), synchronously for every member.
Trajectory simulate_loyalty_evolution(const TeamConfig& config, const MechanismStrengths& mech,
                                      const LoyaltyProfile& initial, const DynamicsSettings& settings,
                                      const SolverSettings& solver = {});

/// Compares mean loyalty over the final quarter of the trajectory with the initial mean.
Regime classify_regime(const Trajectory& trajectory);

}  // namespace teamlab
